#pragma once

#include <nlohmann/json_fwd.hpp>

#include "symcontract/blaschke.hpp"
#include "symcontract/family.hpp"
#include "symcontract/inner2x2.hpp"
#include "symcontract/types.hpp"

namespace symcontract::io {

inline constexpr const char* kSchema = "symcontract/v1";

// Complex numbers encode as [re, im]; matrices as row-major nested arrays.
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const CVector& v);
CVector vector_from_json(const nlohmann::json& j);

nlohmann::json blaschke_to_json(const FiniteBlaschke& b);
FiniteBlaschke blaschke_from_json(const nlohmann::json& j);

nlohmann::json family_to_json(const FamilySpec& s);
FamilySpec family_from_json(const nlohmann::json& j);

nlohmann::json pair_to_json(const InnerPair& p);
InnerPair pair_from_json(const nlohmann::json& j);

/// Wrap a payload as a schema-tagged document.
nlohmann::json document(nlohmann::json payload);

/// Validate the schema tag of a document (tolerates untagged payloads
/// produced by hand, rejects wrong versions).
void check_schema(const nlohmann::json& doc);

}  // namespace symcontract::io
