#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "symcontract/charfun.hpp"
#include "symcontract/conjugation.hpp"
#include "symcontract/errors.hpp"
#include "symcontract/family.hpp"
#include "symcontract/gen.hpp"
#include "symcontract/inner2x2.hpp"
#include "symcontract/json_io.hpp"
#include "symcontract/numlin.hpp"

namespace {

using nlohmann::json;
using namespace symcontract;

constexpr int kExitSymmetric = 0;
constexpr int kExitNotSymmetric = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitInput = 64;

struct RunConfig {
  double tol = 1e-8;
  int grid_size = 24;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;  // empty = stdout
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SYMCONTRACT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput("SYMCONTRACT_SEED is not an integer");
    }
  }
  return 0;
}

json read_doc(const std::string& path) {
  json doc;
  try {
    if (path == "-") {
      doc = json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw InvalidInput("cannot open input file: " + path);
      doc = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  io::check_schema(doc);
  return doc;
}

CMatrix matrix_from_doc(const json& doc) {
  if (doc.is_array()) return io::matrix_from_json(doc);
  if (doc.contains("matrix")) return io::matrix_from_json(doc.at("matrix"));
  throw InvalidInput("expected a matrix document ('matrix' key or bare array)");
}

void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) throw InvalidInput("cannot open output file: " + cfg.output);
    out = &file;
  }
  if (cfg.format == "text")
    *out << text;
  else
    *out << io::document(doc).dump(2) << "\n";
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Symmetric: return kExitSymmetric;
    case Verdict::NotSymmetric: return kExitNotSymmetric;
    default: return kExitIndeterminate;
  }
}

json classify_to_json(const ClassifyReport& rep) {
  json out;
  out["verdict_i"] = to_string(rep.direct.verdict);
  out["verdict_ii"] = to_string(rep.char_side.verdict);
  out["verdict"] = to_string(rep.overall);
  out["residuals"] = {{"direct", rep.direct.best_residual},
                      {"char", rep.char_side.residual}};
  out["defects"] = {rep.defects.dT, rep.defects.dTstar};
  out["cnu"] = rep.cnu;
  out["c00"] = rep.c00;
  out["disagreement"] = rep.disagreement;
  json witnesses = json::object();
  if (rep.direct.witness)
    witnesses["conjugation_U"] = io::matrix_to_json(rep.direct.witness->U);
  if (rep.char_side.J)
    witnesses["J_U"] = io::matrix_to_json(rep.char_side.J->U);
  out["witnesses"] = witnesses;
  out["intertwiner_dim"] = rep.direct.intertwiner_dim;
  out["nullspace_dim"] = rep.char_side.nullspace_dim;
  return out;
}

int cmd_analyze(const RunConfig& cfg, const std::string& input) {
  const Contraction T = make_contraction(matrix_from_doc(read_doc(input)));
  const auto grid =
      default_grid(static_cast<int>(T.T.rows()), cfg.grid_size);
  const ClassifyReport rep = classify(T, grid, cfg.tol, cfg.seed);

  std::ostringstream text;
  text << "verdict: " << to_string(rep.overall)
       << "\n  direct search: " << to_string(rep.direct.verdict)
       << " (residual " << rep.direct.best_residual << ")"
       << "\n  char function: " << to_string(rep.char_side.verdict)
       << " (residual " << rep.char_side.residual << ")"
       << "\n  defects: (" << rep.defects.dT << ", " << rep.defects.dTstar
       << ")  cnu: " << rep.cnu << "  c00: " << rep.c00 << "\n";
  emit(cfg, classify_to_json(rep), text.str());
  return verdict_exit(rep.overall);
}

int cmd_charfun(const RunConfig& cfg, const std::string& input,
                const std::vector<double>& zflat) {
  const json doc = read_doc(input);
  const Contraction T = make_contraction(matrix_from_doc(doc));
  std::vector<Complex> points;
  if (!zflat.empty()) {
    if (zflat.size() % 2 != 0)
      throw InvalidInput("--z expects re,im pairs");
    for (size_t k = 0; k + 1 < zflat.size(); k += 2)
      points.emplace_back(zflat[k], zflat[k + 1]);
  } else if (doc.is_object() && doc.contains("points")) {
    for (const auto& p : doc.at("points"))
      points.push_back(io::complex_from_json(p));
  } else {
    points = default_grid(static_cast<int>(T.T.rows()), cfg.grid_size);
  }
  const CharSamples samples = char_sample(T, points);

  json out;
  out["points"] = json::array();
  out["values"] = json::array();
  for (size_t k = 0; k < samples.points.size(); ++k) {
    out["points"].push_back(io::complex_to_json(samples.points[k]));
    out["values"].push_back(io::matrix_to_json(samples.values[k]));
  }
  std::ostringstream text;
  text << samples.points.size() << " samples of a " << samples.values[0].rows()
       << "x" << samples.values[0].cols() << " characteristic function\n";
  emit(cfg, out, text.str());
  return 0;
}

int cmd_inner2x2(const RunConfig& cfg, const std::string& input) {
  const InnerPair pair = io::pair_from_json(read_doc(input));
  const InnerVerification ver = verify_inner(pair);

  json out;
  out["inner_ok"] = ver.ok;
  out["modulus_residual"] = ver.modulus_residual;
  out["unitarity_residual"] = ver.unitarity_residual;
  out["det_residual"] = ver.det_residual;

  const auto witness = symmetrizable_test(pair);
  out["symmetrizable"] = witness.has_value();
  std::ostringstream text;
  text << "inner: " << (ver.ok ? "ok" : "VIOLATED")
       << "  symmetrizable: " << (witness ? "yes" : "no") << "\n";
  if (witness) {
    const Symmetrizer s = make_symmetrizer(pair, witness->first, witness->second);
    const MatrixEval M = symmetrized_theta(pair, s);
    double res = 0.0;
    for (Complex z : default_grid(pair.space.dim(), cfg.grid_size)) {
      const CMatrix m = M(z);
      res = std::max(res, (m - m.transpose()).norm());
    }
    out["gamma"] = io::complex_to_json(s.gamma);
    out["theta"] = io::complex_to_json(s.theta);
    out["U1"] = io::matrix_to_json(s.U1);
    out["U2"] = io::matrix_to_json(s.U2);
    out["symmetry_residual"] = res;
    text << "  gamma = " << s.gamma << ", theta = " << s.theta
         << ", symmetry residual " << res << "\n";
  }
  emit(cfg, out, text.str());
  if (!ver.ok) return kExitInput;
  return witness ? kExitSymmetric : kExitNotSymmetric;
}

int cmd_family(const RunConfig& cfg, const std::string& input) {
  const FamilySpec spec = io::family_from_json(read_doc(input));
  const CrossValidation cv = cross_validate(spec, cfg.tol, cfg.seed);
  const Contraction T = build_T(spec);

  json out;
  out["case"] = to_string(cv.symbolic.kind);
  out["expected_defects"] = {cv.symbolic.defects.first,
                             cv.symbolic.defects.second};
  if (cv.symbolic.relation) {
    out["mu"] = io::complex_to_json(cv.symbolic.relation->mu);
    out["lambda"] = io::complex_to_json(cv.symbolic.relation->lambda);
  }
  out["numeric"] = classify_to_json(cv.numeric);
  out["indeterminate"] = cv.indeterminate;
  out["agree"] = cv.agree;
  out["T"] = io::matrix_to_json(T.T);

  const double y = std::abs(spec.Y);
  if (y > 1e-12 && std::abs(y - 1.0) > 1e-12) {
    try {
      const ThetaProductReport rep = theta_product_check(spec, 1e-6, cfg.seed);
      out["theta_product"] = {
          {"alpha", io::complex_to_json(rep.alpha)},
          {"beta", io::complex_to_json(rep.beta)},
          {"coincidence_residual", rep.coincidence_residual},
          {"unit_residual", rep.unit_residual},
          {"factorization_residual", rep.factorization_residual}};
    } catch (const Error& e) {
      out["theta_product"] = {{"error", e.what()}};
    }
  }

  std::ostringstream text;
  text << "case: " << to_string(cv.symbolic.kind)
       << "  numeric: " << to_string(cv.numeric.overall)
       << (cv.indeterminate ? " (indeterminate)" : cv.agree ? " (agree)"
                                                            : " (DISAGREE)")
       << "\n";
  emit(cfg, out, text.str());
  return cv.symbolic.kind == FamilyCase::NotSymmetric ? kExitNotSymmetric
                                                      : kExitSymmetric;
}

int cmd_relate(const RunConfig& cfg, const std::string& ufile,
               const std::string& vfile) {
  const FiniteBlaschke u = io::blaschke_from_json(read_doc(ufile));
  const FiniteBlaschke v = io::blaschke_from_json(read_doc(vfile));
  const auto rel = detect_mobius_relation(u, v);

  json out;
  out["related"] = rel.has_value();
  std::ostringstream text;
  if (rel) {
    out["mu"] = io::complex_to_json(rel->mu);
    out["lambda"] = io::complex_to_json(rel->lambda);
    out["residual"] = rel->residual;
    text << "related: mu = " << rel->mu << ", lambda = " << rel->lambda
         << " (residual " << rel->residual << ")\n";
  } else {
    text << "not related\n";
  }
  emit(cfg, out, text.str());
  return rel ? kExitSymmetric : kExitNotSymmetric;
}

int cmd_gen(const RunConfig& cfg, const std::string& kind, int dim,
            int deg) {
  std::mt19937_64 rng(cfg.seed);
  json out;
  std::string desc;
  if (kind == "matrix") {
    out["matrix"] = io::matrix_to_json(gen::random_contraction_matrix(rng, dim));
    desc = "random contraction";
  } else if (kind == "blaschke") {
    out = io::blaschke_to_json(gen::random_blaschke(rng, deg));
    desc = "random finite Blaschke product";
  } else if (kind == "family") {
    const auto branch = static_cast<gen::FamilyBranch>(cfg.seed % 4);
    out = io::family_to_json(gen::random_family_spec(rng, branch, deg));
    desc = "random family instance";
  } else if (kind == "pair") {
    out = io::pair_to_json(gen::random_symmetrizable_pair(rng, deg));
    desc = "random symmetrizable inner pair";
  } else {
    throw InvalidInput("gen: unknown kind '" + kind +
                       "' (expected matrix|blaschke|family|pair)");
  }
  emit(cfg, out, desc + "\n");
  return 0;
}

int cmd_takagi(const RunConfig& cfg, const std::string& input) {
  const CMatrix A = matrix_from_doc(read_doc(input));
  const numlin::TakagiResult t = numlin::takagi(A);
  const CMatrix rec = t.W * t.S.cast<Complex>().asDiagonal() * t.W.transpose();
  const double residual = (rec - A).norm();

  json out;
  out["W"] = io::matrix_to_json(t.W);
  out["S"] = json::array();
  for (Eigen::Index k = 0; k < t.S.size(); ++k) out["S"].push_back(t.S(k));
  out["residual"] = residual;
  std::ostringstream text;
  text << "Takagi residual " << residual << "\n";
  emit(cfg, out, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deciding complex symmetry of finite-dimensional contractions"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--tol", cfg.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--grid", cfg.grid_size, "Sample grid size")
      ->check(CLI::Range(8, 4096));
  std::optional<std::uint64_t> seed_opt;
  app.add_option("--seed", seed_opt, "RNG seed (falls back to SYMCONTRACT_SEED)");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", cfg.output, "Output path (default stdout)");

  std::string input, vfile, kind;
  std::vector<double> zflat;
  int dim = 4, deg = 3;

  auto* analyze = app.add_subcommand("analyze", "Classify a contraction");
  analyze->add_option("input", input, "Matrix JSON file (- for stdin)")->required();

  auto* charfun = app.add_subcommand("charfun", "Sample the characteristic function");
  charfun->add_option("input", input, "Matrix JSON file")->required();
  charfun->add_option("--z", zflat, "Sample points as re,im pairs");

  auto* inner = app.add_subcommand("inner2x2", "Symmetrizability of a 2x2 inner function");
  inner->add_option("input", input, "Inner pair JSON file")->required();

  auto* family = app.add_subcommand("family", "Classify a coupled-shift family instance");
  family->add_option("input", input, "Family spec JSON file")->required();

  auto* relate = app.add_subcommand("relate", "Detect v = mu * b_lambda(u)");
  relate->add_option("u", input, "First Blaschke JSON file")->required();
  relate->add_option("v", vfile, "Second Blaschke JSON file")->required();

  auto* generate = app.add_subcommand("gen", "Generate a seeded random instance");
  generate->add_option("kind", kind, "matrix|blaschke|family|pair")->required();
  generate->add_option("--dim", dim, "Matrix dimension");
  generate->add_option("--degree", deg, "Blaschke degree bound");

  auto* takagi = app.add_subcommand("takagi", "Takagi factorization of a symmetric matrix");
  takagi->add_option("input", input, "Matrix JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    cfg.seed = seed_opt ? *seed_opt : default_seed();
    if (analyze->parsed()) return cmd_analyze(cfg, input);
    if (charfun->parsed()) return cmd_charfun(cfg, input, zflat);
    if (inner->parsed()) return cmd_inner2x2(cfg, input);
    if (family->parsed()) return cmd_family(cfg, input);
    if (relate->parsed()) return cmd_relate(cfg, input, vfile);
    if (generate->parsed()) return cmd_gen(cfg, kind, dim, deg);
    if (takagi->parsed()) return cmd_takagi(cfg, input);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
