#pragma once

#include <stdexcept>
#include <string>

namespace symcontract {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct NotCSymmetric : Error { using Error::Error; };
struct OutOfDisk : Error { using Error::Error; };
struct NoDefect : Error { using Error::Error; };
struct NotAContraction : Error { using Error::Error; };
struct NumericalDegeneracy : Error { using Error::Error; };
struct NotNonnegative : Error { using Error::Error; };
struct CbNotB : Error { using Error::Error; };
struct FactorizationFailed : Error { using Error::Error; };
struct FixedPointViolated : Error { using Error::Error; };
struct CoincidenceFailed : Error { using Error::Error; };

}  // namespace symcontract
