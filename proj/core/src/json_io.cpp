#include "symcontract/json_io.hpp"

#include <nlohmann/json.hpp>

#include "symcontract/errors.hpp"

namespace symcontract::io {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw InvalidInput("json: complex number must be [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidInput("json: matrix must be a nonempty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[static_cast<size_t>(r)].size()) != cols)
      throw InvalidInput("json: ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(j[static_cast<size_t>(r)][static_cast<size_t>(c)]);
  }
  return m;
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k)
    out.push_back(complex_to_json(v(k)));
  return out;
}

CVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("json: vector must be an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k)
    v(k) = complex_from_json(j[static_cast<size_t>(k)]);
  return v;
}

json blaschke_to_json(const FiniteBlaschke& b) {
  json zeros = json::array();
  for (Complex z : b.zeros) zeros.push_back(complex_to_json(z));
  return json{{"zeros", std::move(zeros)},
              {"const", complex_to_json(b.constant)}};
}

FiniteBlaschke blaschke_from_json(const json& j) {
  if (!j.contains("zeros") || !j.contains("const"))
    throw InvalidInput("json: blaschke needs 'zeros' and 'const'");
  FiniteBlaschke b;
  for (const auto& z : j.at("zeros")) {
    const Complex zero = complex_from_json(z);
    if (std::abs(zero) > 1.0 - 1e-10)
      throw InvalidInput("json: blaschke zero outside the open disk");
    b.zeros.push_back(zero);
  }
  b.constant = complex_from_json(j.at("const"));
  if (std::abs(std::abs(b.constant) - 1.0) > 1e-6)
    throw InvalidInput("json: blaschke constant must be unimodular");
  return b;
}

json family_to_json(const FamilySpec& s) {
  return json{{"u", blaschke_to_json(s.u)},
              {"v", blaschke_to_json(s.v)},
              {"Y", complex_to_json(s.Y)}};
}

FamilySpec family_from_json(const json& j) {
  if (!j.contains("u") || !j.contains("v") || !j.contains("Y"))
    throw InvalidInput("json: family spec needs 'u', 'v', 'Y'");
  return FamilySpec{blaschke_from_json(j.at("u")),
                    blaschke_from_json(j.at("v")),
                    complex_from_json(j.at("Y"))};
}

json pair_to_json(const InnerPair& p) {
  return json{{"phi", blaschke_to_json(p.phi)},
              {"a", vector_to_json(p.a)},
              {"b", vector_to_json(p.b)}};
}

InnerPair pair_from_json(const json& j) {
  if (!j.contains("phi") || !j.contains("a") || !j.contains("b"))
    throw InvalidInput("json: inner pair needs 'phi', 'a', 'b'");
  return make_inner_pair(blaschke_from_json(j.at("phi")),
                         vector_from_json(j.at("a")),
                         vector_from_json(j.at("b")));
}

json document(json payload) {
  payload["schema"] = kSchema;
  return payload;
}

void check_schema(const json& doc) {
  if (doc.contains("schema") && doc.at("schema") != kSchema)
    throw InvalidInput("json: unsupported schema version");
}

}  // namespace symcontract::io
