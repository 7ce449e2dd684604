// casorati: validate tensor documents, print invariant/inequality reports,
// and emit gallery tensors.
//
// Exit codes: 0 success, 1 validation or verdict failure, 2 input error.

#include <CLI11.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "casorati/casorati.hpp"

namespace {

using namespace casorati;

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

int cmd_validate(const std::string& file, double tol) {
  TensorDocument doc = parse_tensor_document(read_file(file));
  const auto& z = doc.zeta;
  std::cout << "zeta: n=" << z.n() << " q=" << z.q() << ", asymmetry defect " << z.asymmetry_defect() << "\n";
  if (!doc.T) return 0;
  const double scaled = tol * (1.0 + doc.T->max_abs());
  const auto bad = validate_curvature_like(*doc.T, scaled);
  for (const auto& v : bad) {
    std::cout << "T violates " << to_string(v.family) << ": " << v.max_violation << " at (i,j,k,l)=("
              << v.worst_index[0] << "," << v.worst_index[1] << "," << v.worst_index[2] << "," << v.worst_index[3]
              << ")\n";
  }
  if (bad.empty()) std::cout << "T is curvature-like within " << scaled << "\n";
  return bad.empty() ? 0 : kExitFailure;
}

struct ReportFlags {
  std::string file;
  std::vector<double> rs;
  std::vector<std::string> variants;
  bool submanifold = false;
  std::optional<int> oracle_samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<double> gtol;
  double holds_tol = VerifyOptions{}.holds_rel_tol;
  double equality_tol = VerifyOptions{}.equality_tol;
  double classification_tol = -1.0;
  std::string json_out;
};

DeltaVariant parse_variant(const std::string& name) {
  static const std::map<std::string, DeltaVariant> names{
      {"delta_n_minus_1", DeltaVariant::DeltaNMinus1},
      {"delta_hat_n_minus_1", DeltaVariant::DeltaHatNMinus1},
      {"delta_prime_n_minus_1", DeltaVariant::DeltaPrimeNMinus1},
  };
  const auto it = names.find(name);
  if (it == names.end()) throw InputError("unknown variant " + name);
  return it->second;
}

int cmd_report(const ReportFlags& f) {
  TensorDocument doc = parse_tensor_document(read_file(f.file));
  ReportRequest req;
  req.rs = f.rs;
  for (const auto& v : f.variants) req.variants.push_back(parse_variant(v));
  req.submanifold = f.submanifold;
  req.optimizer = doc.optimizer.value_or(ExtremizerConfig{});
  if (f.oracle_samples) req.optimizer.samples = *f.oracle_samples;
  if (f.seed) req.optimizer.seed = *f.seed;
  if (f.restarts) req.optimizer.restarts = *f.restarts;
  if (f.gtol) req.optimizer.gtol = *f.gtol;
  req.verify.holds_rel_tol = f.holds_tol;
  req.verify.equality_tol = f.equality_tol;
  req.classification_tol = f.classification_tol;

  const ReportDocument rep = build_report(doc.zeta, req);
  if (!f.json_out.empty()) {
    write_output(f.json_out, to_json(rep).dump(2) + "\n");
  } else {
    std::cout << render_table(rep);
  }
  return rep.all_hold() ? 0 : kExitFailure;
}

struct GalleryFlags {
  std::string kind;
  int n = 3;
  int q = 1;
  double a = 1.0;
  double r = 1.0;
  std::uint64_t seed = 0;
  double scale = 1.0;
  std::optional<double> c;
  std::vector<double> kappa;
  std::string out;
};

int cmd_gallery(const GalleryFlags& f) {
  using namespace casorati::gallery;
  if (f.kind == "hypersurface") {
    if (f.kappa.empty()) throw InputError("hypersurface needs --kappa");
    const Eigen::VectorXd k = Eigen::Map<const Eigen::VectorXd>(f.kappa.data(), Eigen::Index(f.kappa.size()));
    write_output(f.out, tensor_to_json(hypersurface_from_principal_curvatures(k, f.c).zeta).dump(2) + "\n");
    return 0;
  }
  Ambient ambient;
  if (f.c) ambient = SpaceForm{*f.c};
  const GeometrySetup setup(f.n, f.q, ambient);
  Kind kind;
  if (f.kind == "zero") {
    kind = Zero{};
  } else if (f.kind == "umbilical") {
    kind = Umbilical{f.a};
  } else if (f.kind == "equality_r") {
    kind = EqualityR{f.a, f.r};
  } else if (f.kind == "equality_delta") {
    kind = EqualityDelta{f.a};
  } else if (f.kind == "equality_delta_hat") {
    kind = EqualityDeltaHat{f.a};
  } else if (f.kind == "random") {
    kind = Random{f.seed, f.scale};
  } else {
    throw InputError("unknown gallery kind " + f.kind);
  }
  write_output(f.out, tensor_to_json(generate({kind, setup})).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casorati curvature inequalities on pointwise tensor data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", casorati::kToolVersion);

  std::string validate_file;
  double validate_tol = 1e-12;
  auto* validate = app.add_subcommand("validate", "Check a tensor document");
  validate->add_option("file", validate_file, "Tensor JSON")->required();
  validate->add_option("--tol", validate_tol, "Relative tolerance for the curvature identities of a T block")
      ->capture_default_str();

  ReportFlags rf;
  auto* report = app.add_subcommand("report", "Invariants, extrema, deltas, verdicts, classification");
  report->add_option("file", rf.file, "Tensor JSON")->required();
  report->add_option("--r", rf.rs, "Parameter r of delta(r; n-1) / delta^(r; n-1); repeatable");
  report->add_option("--variant", rf.variants,
                     "delta_n_minus_1 | delta_hat_n_minus_1 | delta_prime_n_minus_1; repeatable");
  report->add_flag("--submanifold", rf.submanifold, "Also verify the submanifold form (needs an ambient)");
  report->add_option("--oracle-samples", rf.oracle_samples, "Oracle cross-check sample count (0 = off)");
  report->add_option("--seed", rf.seed, "Optimizer and oracle seed");
  report->add_option("--restarts", rf.restarts, "Random restarts (default 8 + 4n)");
  report->add_option("--gtol", rf.gtol, "Riemannian gradient tolerance");
  report->add_option("--holds-tol", rf.holds_tol, "Relative tolerance of the holds test")->capture_default_str();
  report->add_option("--equality-tol", rf.equality_tol, "Tolerance of the equality test")->capture_default_str();
  report->add_option("--classification-tol", rf.classification_tol,
                     "Tolerance of the equality classifier (default 1e-8 (1 + max|zeta|^2))");
  report->add_option("--json", rf.json_out, "Write the JSON report here ('-' for stdout)");

  GalleryFlags gf;
  auto* gal = app.add_subcommand("gallery", "Emit a distinguished tensor as JSON");
  gal->add_option("kind", gf.kind,
                  "zero | umbilical | equality_r | equality_delta | equality_delta_hat | random | hypersurface")
      ->required();
  gal->add_option("--n", gf.n, "Tangent dimension")->capture_default_str();
  gal->add_option("--q", gf.q, "Bundle rank")->capture_default_str();
  gal->add_option("--a", gf.a, "Scale parameter")->capture_default_str();
  gal->add_option("--r", gf.r, "r for equality_r")->capture_default_str();
  gal->add_option("--seed", gf.seed, "Seed for random")->capture_default_str();
  gal->add_option("--scale", gf.scale, "Entry bound for random")->capture_default_str();
  gal->add_option("--c", gf.c, "Space form curvature of the ambient");
  gal->add_option("--kappa", gf.kappa, "Principal curvatures for hypersurface");
  gal->add_option("--out", gf.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*validate) return cmd_validate(validate_file, validate_tol);
    if (*report) return cmd_report(rf);
    if (*gal) return cmd_gallery(gf);
  } catch (const casorati::AsymmetryError& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const casorati::Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
