#pragma once

// JSON tensor documents in, report documents out.
//
// Input:
//   {"n": int, "q": int,
//    "ambient": null | {"space_form_c": x} | {"tau_tilde_nor": x},
//    "zeta": [[[...]]],                 // [alpha][i][j]
//    "T": [[[[...]]]],                  // optional, [i][j][k][l]
//    "optimizer": {"restarts", "seed", "gtol", "samples"}}   // optional
//
// Output numbers are written in shortest round-trip form, so a report's
// echoed "input" block re-parses to the bit-identical tensor.

#include <nlohmann/json.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "casorati/delta_casorati.hpp"
#include "casorati/errors.hpp"
#include "casorati/extremizer.hpp"
#include "casorati/frame_core.hpp"
#include "casorati/inequality_lab.hpp"
#include "casorati/invariants.hpp"

namespace casorati {

inline constexpr const char* kToolName = "casorati";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

/// Malformed document: bad JSON, wrong types, wrong shapes, forbidden
/// parameter values. Asymmetric zeta is reported as AsymmetryError instead.
class InputError : public Error {
 public:
  using Error::Error;
};

struct TensorDocument {
  BundleSymTensor zeta;
  std::optional<CurvatureTensor> T;
  std::optional<ExtremizerConfig> optimizer;
};

namespace detail {

using json = nlohmann::json;

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + " must be an integer");
  return j.get<int>();
}

inline double as_double(const json& j, const std::string& what) {
  if (!j.is_number()) throw InputError(what + " must be a number");
  return j.get<double>();
}

inline Ambient parse_ambient(const json& j) {
  if (j.is_null()) return {};
  if (!j.is_object() || j.size() != 1) {
    throw InputError("ambient must be null, {\"space_form_c\": x} or {\"tau_tilde_nor\": x}");
  }
  if (j.contains("space_form_c")) return SpaceForm{as_double(j.at("space_form_c"), "ambient.space_form_c")};
  if (j.contains("tau_tilde_nor")) return AmbientScalar{as_double(j.at("tau_tilde_nor"), "ambient.tau_tilde_nor")};
  throw InputError("unknown ambient kind " + j.begin().key());
}

inline void check_array(const json& j, std::size_t len, const std::string& what) {
  if (!j.is_array() || j.size() != len) {
    throw InputError(what + " must be an array of length " + std::to_string(len));
  }
}

inline std::vector<Eigen::MatrixXd> parse_slices(const json& j, int n, int q) {
  check_array(j, q, "zeta");
  std::vector<Eigen::MatrixXd> out;
  for (int a = 0; a < q; ++a) {
    const std::string la = "zeta[" + std::to_string(a) + "]";
    check_array(j[a], n, la);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      const std::string li = la + "[" + std::to_string(i) + "]";
      check_array(j[a][i], n, li);
      for (int k = 0; k < n; ++k) m(i, k) = as_double(j[a][i][k], li + "[" + std::to_string(k) + "]");
    }
    if (!m.allFinite()) throw InputError(la + " has non-finite entries");
    out.push_back(std::move(m));
  }
  return out;
}

inline CurvatureTensor parse_curvature(const json& j, const GeometrySetup& setup) {
  const int n = setup.n();
  check_array(j, n, "T");
  std::vector<double> comps;
  comps.reserve(std::size_t(n) * n * n * n);
  for (int i = 0; i < n; ++i) {
    check_array(j[i], n, "T[i]");
    for (int k = 0; k < n; ++k) {
      check_array(j[i][k], n, "T[i][j]");
      for (int l = 0; l < n; ++l) {
        check_array(j[i][k][l], n, "T[i][j][k]");
        for (int m = 0; m < n; ++m) comps.push_back(as_double(j[i][k][l][m], "T entry"));
      }
    }
  }
  return CurvatureTensor(setup, std::move(comps));
}

inline ExtremizerConfig parse_optimizer(const json& j) {
  if (!j.is_object()) throw InputError("optimizer must be an object");
  ExtremizerConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "restarts") {
      cfg.restarts = as_int(val, "optimizer.restarts");
    } else if (key == "seed") {
      if (!val.is_number_integer() || val.get<std::int64_t>() < 0) throw InputError("optimizer.seed must be a non-negative integer");
      cfg.seed = val.get<std::uint64_t>();
    } else if (key == "gtol") {
      cfg.gtol = as_double(val, "optimizer.gtol");
      if (!(cfg.gtol > 0.0)) throw InputError("optimizer.gtol must be positive");
    } else if (key == "samples") {
      cfg.samples = as_int(val, "optimizer.samples");
      if (cfg.samples < 0) throw InputError("optimizer.samples must be >= 0");
    } else {
      throw InputError("unknown optimizer field \"" + key + "\"");
    }
  }
  return cfg;
}

}  // namespace detail

/// Throws InputError for schema problems and AsymmetryError for a slice
/// asymmetric beyond 1e-9.
inline TensorDocument parse_tensor_document(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("tensor document must be a JSON object");
  try {
    const int n = detail::as_int(detail::require(j, "n"), "n");
    const int q = detail::as_int(detail::require(j, "q"), "q");
    const Ambient ambient = j.contains("ambient") ? detail::parse_ambient(j.at("ambient")) : Ambient{};
    const GeometrySetup setup(n, q, ambient);
    TensorDocument doc{BundleSymTensor(setup, detail::parse_slices(detail::require(j, "zeta"), n, q)), std::nullopt,
                       std::nullopt};
    if (j.contains("T")) doc.T = detail::parse_curvature(j.at("T"), setup);
    if (j.contains("optimizer")) doc.optimizer = detail::parse_optimizer(j.at("optimizer"));
    return doc;
  } catch (const AsymmetryError&) {
    throw;
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  }
}

inline TensorDocument parse_tensor_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_tensor_document(j);
}

using ojson = nlohmann::ordered_json;

inline ojson ambient_to_json(const Ambient& a) {
  if (const auto* sf = std::get_if<SpaceForm>(&a)) return ojson{{"space_form_c", sf->c}};
  if (const auto* raw = std::get_if<AmbientScalar>(&a)) return ojson{{"tau_tilde_nor", raw->tau_tilde_nor}};
  return nullptr;
}

inline ojson vector_to_json(const Eigen::VectorXd& v) {
  ojson out = ojson::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

/// Tensor document for zeta (no T block, no optimizer block).
inline ojson tensor_to_json(const BundleSymTensor& zeta) {
  ojson j;
  j["n"] = zeta.n();
  j["q"] = zeta.q();
  j["ambient"] = ambient_to_json(zeta.setup().ambient());
  j["zeta"] = zeta.to_nested();
  return j;
}

inline ojson to_json(const InvariantBundle& b) {
  ojson j;
  j["tau_T"] = b.tau_T;
  j["tau_T_nor"] = b.tau_T_nor;
  j["ricci"] = vector_to_json(b.ricci);
  j["casorati"] = b.casorati;
  j["trace_norm_sq"] = b.trace_norm_sq;
  j["mean_curv_sq"] = b.mean_curv_sq;
  j["sigma_norm_sq"] = b.sigma_norm_sq;
  j["n2_extension"] = b.n2_extension;
  if (b.ambient) {
    const auto& a = *b.ambient;
    j["ambient"] = ojson{{"tau_tilde_nor", a.tau_tilde_nor},
                         {"tau_tilde", a.tau_tilde},
                         {"tau", a.tau},
                         {"tau_nor", a.tau_nor},
                         {"tau_nor_from_mean_curvature", a.tau_nor_from_mean_curvature},
                         {"gauss_identity_defect", a.gauss_identity_defect}};
  } else {
    j["ambient"] = nullptr;
  }
  return j;
}

inline ojson to_json(const ExtremalResult& r) {
  ojson d;
  d["restarts"] = r.diagnostics.restarts;
  d["candidates"] = r.diagnostics.candidates;
  d["iterations"] = r.diagnostics.iterations;
  d["multiplicity"] = r.diagnostics.multiplicity;
  if (r.diagnostics.oracle_value) {
    d["oracle_sampled_value"] = *r.diagnostics.oracle_sampled_value;
    d["oracle_value"] = *r.diagnostics.oracle_value;
    d["oracle_gap"] = *r.diagnostics.oracle_gap;
  }
  ojson j;
  j["value"] = r.value;
  j["argmin_or_argmax"] = vector_to_json(r.argmin_or_argmax.normal());
  j["mode"] = to_string(r.mode);
  j["diagnostics"] = d;
  return j;
}

inline ojson to_json(const DeltaFamily& d) {
  ojson j;
  j["variant"] = to_string(d.variant);
  j["r"] = d.r ? ojson(*d.r) : ojson(nullptr);
  j["a_of_r"] = d.a_of_r;
  j["delta"] = d.delta;
  j["legacy"] = d.legacy;
  j["n2_extension"] = d.n2_extension;
  return j;
}

inline ojson to_json(const InequalityVerdict& v) {
  ojson j;
  j["variant"] = to_string(v.variant);
  j["r_used"] = v.r_used ? ojson(*v.r_used) : ojson(nullptr);
  j["submanifold"] = v.submanifold;
  j["ambient_shift"] = v.ambient_shift;
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["slack"] = v.slack;
  j["holds"] = v.holds;
  j["equality"] = v.equality;
  return j;
}

inline ojson to_json(const EqualityClassification& c) {
  ojson j;
  j["r"] = c.r;
  j["target_ratio"] = c.target_ratio;
  j["frame"] = c.frame;
  j["distinguished_axis"] = c.distinguished_axis;
  j["distinguished_direction"] = vector_to_json(c.distinguished_direction);
  j["offdiag_max"] = c.offdiag_max;
  j["ratio_defects"] = c.ratio_defects;
  j["multiplicity_defects"] = c.multiplicity_defects;
  j["commutator_max"] = c.commutator_max;
  j["a"] = c.a;
  j["secondary_slices_norm"] = c.secondary_slices_norm;
  j["tol"] = c.tol;
  j["is_equality_configuration"] = c.is_equality_configuration;
  j["invariantly_quasi_umbilical"] = c.invariantly_quasi_umbilical;
  j["flat_normal_connection"] = c.flat_normal_connection;
  return j;
}

struct ReportRequest {
  std::vector<double> rs;
  /// Fixed-coefficient variants to evaluate (delta_n_minus_1,
  /// delta_hat_n_minus_1, delta_prime_n_minus_1). Empty with empty rs
  /// selects delta_n_minus_1 and delta_hat_n_minus_1.
  std::vector<DeltaVariant> variants;
  bool submanifold = false;
  ExtremizerConfig optimizer;
  VerifyOptions verify;
  /// Classification tolerance; negative selects 1e-8 (1 + max|zeta|^2).
  double classification_tol = -1.0;
};

struct ReportDocument {
  BundleSymTensor input;
  InvariantBundle invariants;
  HyperplaneExtrema extremal;
  std::vector<DeltaFamily> deltas;
  std::vector<InequalityVerdict> verdicts;
  std::vector<EqualityClassification> classification;
  ReportRequest request;

  bool all_hold() const {
    for (const auto& v : verdicts)
      if (!v.holds) return false;
    return true;
  }
};

/// Throws InputError for an invalid r, a variant the verifier does not
/// accept, or a submanifold request without an ambient.
inline ReportDocument build_report(const BundleSymTensor& zeta, ReportRequest req) {
  const int n = zeta.n();
  for (double r : req.rs) {
    try {
      check_r(n, r);
    } catch (const DomainError& e) {
      throw InputError(e.what());
    }
  }
  for (auto v : req.variants) {
    if (v == DeltaVariant::DeltaR || v == DeltaVariant::DeltaHatR) {
      throw InputError(std::string("variant ") + to_string(v) + " is selected through --r");
    }
  }
  if (req.rs.empty() && req.variants.empty()) {
    req.variants = {DeltaVariant::DeltaNMinus1, DeltaVariant::DeltaHatNMinus1};
  }
  if (req.submanifold && !zeta.setup().has_ambient()) {
    throw InputError("submanifold verdicts need an ambient block in the input");
  }

  ReportDocument doc{zeta, submanifold_relations(zeta), extremize_both(zeta, req.optimizer), {}, {}, {}, req};
  const auto& ext = doc.extremal;
  const double ctol = req.classification_tol < 0 ? default_equality_tol(zeta) : req.classification_tol;

  for (double r : req.rs) {
    doc.deltas.push_back(delta_r(zeta, r, ext));
    doc.verdicts.push_back(verify_algebraic(zeta, r, ext, req.verify));
    if (req.submanifold) doc.verdicts.push_back(verify_submanifold(zeta, DeltaTarget::by_r(r), ext, req.verify));
    doc.classification.push_back(classify_equality(zeta, r, ctol));
  }
  for (auto v : req.variants) {
    if (v == DeltaVariant::DeltaPrimeNMinus1) {
      doc.deltas.push_back(delta_prime_n_minus_1(zeta, ext));
      continue;
    }
    const bool hat = v == DeltaVariant::DeltaHatNMinus1;
    doc.deltas.push_back(hat ? delta_hat_n_minus_1(zeta, ext) : delta_n_minus_1(zeta, ext));
    doc.verdicts.push_back(verify_fixed(zeta, v, ext, req.verify));
    const DeltaTarget t = hat ? DeltaTarget::delta_hat() : DeltaTarget::delta();
    if (req.submanifold) doc.verdicts.push_back(verify_submanifold(zeta, t, ext, req.verify));
    doc.classification.push_back(classify_equality(zeta, t, ctol));
  }
  return doc;
}

inline ojson to_json(const ReportDocument& doc) {
  const auto& req = doc.request;
  ojson j;
  j["input"] = tensor_to_json(doc.input);
  j["invariants"] = to_json(doc.invariants);
  j["extremal"] = ojson{{"inf", to_json(doc.extremal.inf)}, {"sup", to_json(doc.extremal.sup)}};
  j["deltas"] = ojson::array();
  for (const auto& d : doc.deltas) j["deltas"].push_back(to_json(d));
  j["verdicts"] = ojson::array();
  for (const auto& v : doc.verdicts) j["verdicts"].push_back(to_json(v));
  j["classification"] = ojson::array();
  for (const auto& c : doc.classification) j["classification"].push_back(to_json(c));
  ojson tol;
  tol["gtol"] = req.optimizer.gtol;
  tol["ftol"] = req.optimizer.ftol;
  tol["max_iterations"] = req.optimizer.max_iterations;
  tol["restarts"] = req.optimizer.effective_restarts(doc.input.n());
  tol["oracle_samples"] = req.optimizer.samples;
  tol["holds_rel_tol"] = req.verify.holds_rel_tol;
  tol["equality_tol"] = req.verify.equality_tol;
  tol["classification_tol"] =
      req.classification_tol < 0 ? default_equality_tol(doc.input) : req.classification_tol;
  j["tool"] = ojson{{"name", kToolName},
                    {"version", kToolVersion},
                    {"schema_version", kReportSchemaVersion},
                    {"seed", req.optimizer.seed},
                    {"tolerances", tol}};
  return j;
}

/// Human-readable summary; 12 significant digits.
inline std::string render_table(const ReportDocument& doc) {
  std::ostringstream os;
  os << std::setprecision(12);
  const auto& inv = doc.invariants;
  os << "n = " << doc.input.n() << ", q = " << doc.input.q() << "\n\n";
  os << "invariants\n";
  os << "  C          " << inv.casorati << "\n";
  os << "  tau_T      " << inv.tau_T << "\n";
  os << "  tau_T_nor  " << inv.tau_T_nor << "\n";
  os << "  ||H||^2    " << inv.mean_curv_sq << "\n";
  if (inv.ambient) {
    os << "  tau~_nor   " << inv.ambient->tau_tilde_nor << "\n";
    os << "  tau_nor    " << inv.ambient->tau_nor << "\n";
  }
  if (inv.n2_extension) os << "  note       n = 2: hyperplanes are lines, k = 1 formulas in use\n";
  os << "\nhyperplane extrema\n";
  for (const auto* r : {&doc.extremal.inf, &doc.extremal.sup}) {
    os << "  " << to_string(r->mode) << " C(Pi)  " << r->value << "  normal (";
    const auto& u = r->argmin_or_argmax.normal();
    for (int i = 0; i < u.size(); ++i) os << (i ? ", " : "") << u[i];
    os << ")  multiplicity " << r->diagnostics.multiplicity;
    if (r->diagnostics.oracle_gap) os << "  oracle gap " << *r->diagnostics.oracle_gap;
    os << "\n";
  }
  os << "\ndeltas\n";
  for (const auto& d : doc.deltas) {
    os << "  " << std::left << std::setw(22) << to_string(d.variant) << std::right;
    if (d.r) os << " r = " << *d.r;
    os << "  value " << d.delta << (d.legacy ? "  (legacy)" : "") << "\n";
  }
  os << "\nverdicts\n";
  for (const auto& v : doc.verdicts) {
    os << "  " << std::left << std::setw(22) << to_string(v.variant) << std::right;
    if (v.r_used) os << " r = " << *v.r_used;
    os << (v.submanifold ? "  [submanifold]" : "") << "  lhs " << v.lhs << "  rhs " << v.rhs << "  slack "
       << v.slack << "  " << (v.holds ? "holds" : "FAILS") << (v.equality ? ", equality" : "") << "\n";
  }
  os << "\nclassification\n";
  for (const auto& c : doc.classification) {
    os << "  r = " << c.r << "  " << (c.is_equality_configuration ? "equality configuration" : "not equality");
    if (c.is_equality_configuration) {
      os << ", axis e" << c.distinguished_axis << " (" << c.frame << " frame)"
         << (c.invariantly_quasi_umbilical ? ", invariantly quasi-umbilical" : "");
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace casorati
