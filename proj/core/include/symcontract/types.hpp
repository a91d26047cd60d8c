#pragma once

#include <complex>
#include <Eigen/Dense>

namespace symcontract {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Outcome of a witness search.  NotSymmetric is only reported with a
/// certificate (empty constraint nullspace); a failed heuristic search
/// yields Indeterminate.
enum class Verdict { Symmetric, NotSymmetric, Indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Symmetric: return "SYMMETRIC";
    case Verdict::NotSymmetric: return "NOT_SYMMETRIC";
    default: return "INDETERMINATE";
  }
}

}  // namespace symcontract
