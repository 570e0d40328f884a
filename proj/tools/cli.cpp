#include "cli.hpp"

#include "symfact/certkit.hpp"
#include "symfact/errors.hpp"
#include "symfact/factor.hpp"
#include "symfact/generate.hpp"
#include "symfact/json_io.hpp"
#include "symfact/obstruct.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <vector>

namespace symfact::cli {

namespace fs = std::filesystem;

namespace {

struct FactorResult {
  std::optional<FactorizationCertificate> cert;
  std::optional<ObstructionCertificate> obstruction;
};

// Result of one factor job; text is buffered so parallel jobs never share a stream.
struct Outcome {
  int code = kExitOk;
  std::string data;
  std::string diagnostics;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text << '\n';
}

ComplexMatrix read_matrix(const std::string& path) { return matrix_from_json(parse_json(read_text(path))); }

double parse_env_tol(const char* text) {
  char* end = nullptr;
  const double v = std::strtod(text, &end);
  if (end == text || *end != '\0' || !std::isfinite(v) || v <= 0) {
    throw Error(ErrorKind::InvalidArgument, std::string("SYMFACT_TOL is not a positive number: ") + text);
  }
  return v;
}

// Defaults, then SYMFACT_TOL, then flags.
Tolerance resolve_tolerance(const CliConfig& cfg, Tolerance base = {}) {
  if (const char* env = std::getenv("SYMFACT_TOL"); env != nullptr && *env != '\0') {
    base.verify_tol = parse_env_tol(env);
  }
  if (cfg.tol) base.verify_tol = *cfg.tol;
  if (cfg.verify_tol) base.verify_tol = *cfg.verify_tol;
  if (cfg.unitary_tol) base.unitary_tol = *cfg.unitary_tol;
  if (cfg.cluster_tol) base.cluster_tol = *cfg.cluster_tol;
  base.validate();
  return base;
}

int code_for(const Error& e) {
  return e.kind() == ErrorKind::ConvergenceFailure ? kExitVerifyFailed : kExitInvalid;
}

// alpha when U = alpha I within verify_tol.
std::optional<cplx> scalar_value(const ComplexMatrix& u, const Tolerance& tol) {
  const cplx a = u(0, 0);
  if (std::abs(a) == 0.0) return std::nullopt;
  if (operator_norm(u - a * identity(u.rows())) > tol.verify_tol) return std::nullopt;
  return a / std::abs(a);
}

FactorizationCertificate retarget(const ComplexMatrix& u, const FactorizationCertificate& c,
                                  const Tolerance& tol) {
  return make_certificate(u, c.factors, c.method, tol);
}

FactorResult factor_weyl(const ComplexMatrix& u, const Tolerance& tol) {
  if (auto o = det_obstruction(u, tol)) return {std::nullopt, o};
  const auto alpha = scalar_value(u, tol);
  if (!alpha) throw Error(ErrorKind::InvalidArgument, "weyl needs a scalar input alpha I");
  if (u.rows() % 2 != 0) throw Error(ErrorKind::OddDimension, "weyl needs an even dimension 2n");
  const auto n = static_cast<int>(u.rows() / 2);
  const long long k = std::llround(unit_angle(*alpha) * n / kPi);
  if (std::abs(*alpha - std::polar(1.0, kPi * static_cast<double>(k) / n)) > tol.verify_tol) {
    throw Error(ErrorKind::InvalidArgument, "weyl needs alpha = exp(i pi k/n) with 2n = dim");
  }
  return {retarget(u, weyl_scalar_four_factor(k, n, tol), tol), std::nullopt};
}

FactorResult factor_three_scalar(const ComplexMatrix& u, const Tolerance& tol) {
  if (auto o = quadrant_obstruction(u, tol)) return {std::nullopt, o};
  if (auto o = det_obstruction(u, tol)) return {std::nullopt, o};
  const auto alpha = scalar_value(u, tol);
  if (!alpha) throw Error(ErrorKind::InvalidArgument, "three-scalar needs a scalar input alpha I");
  return {retarget(u, three_factor_scalar(*alpha, static_cast<int>(u.rows()), tol), tol), std::nullopt};
}

FactorResult factor_auto(const ComplexMatrix& u, const Tolerance& tol) {
  if (!conj_spectrum_obstruction(u, tol)) {
    try {
      return {two_symmetry_factor(u, tol), std::nullopt};
    } catch (const SpectrumNotConjSymmetric&) {
      // borderline pairing; fall through to four symmetries
    }
  }
  if (auto o = det_obstruction(u, tol)) return {std::nullopt, o};
  return {radjavi_four_factor(u, tol), std::nullopt};
}

FactorResult factor_matrix(const ComplexMatrix& u, const std::string& method, const Tolerance& tol) {
  if (method == "auto") return factor_auto(u, tol);
  if (method == "two") {
    if (auto o = conj_spectrum_obstruction(u, tol)) return {std::nullopt, o};
    return {two_symmetry_factor(u, tol), std::nullopt};
  }
  if (method == "radjavi") {
    if (auto o = det_obstruction(u, tol)) return {std::nullopt, o};
    return {radjavi_four_factor(u, tol), std::nullopt};
  }
  if (method == "weyl") return factor_weyl(u, tol);
  if (method == "finite-spectrum") {
    if (auto o = det_obstruction(u, tol)) return {std::nullopt, o};
    return {finite_spectrum_four_factor(u, tol), std::nullopt};
  }
  if (method == "three-scalar") return factor_three_scalar(u, tol);
  throw Error(ErrorKind::InvalidArgument, "unknown method " + method);
}

// Factors one file. `out_path` empty means the certificate goes to data.
Outcome factor_file(const std::string& in_path, const std::string& out_path, const std::string& method,
                    const Tolerance& tol) {
  Outcome o;
  try {
    const auto u = read_matrix(in_path);
    const auto result = factor_matrix(u, method, tol);
    if (result.obstruction) {
      o.code = kExitObstructed;
      o.data = serialize(*result.obstruction);
      o.diagnostics = in_path + ": obstructed (" + to_string(result.obstruction->kind) + ")\n";
      return o;
    }
    const auto& cert = *result.cert;
    const auto text = serialize(cert);
    if (out_path.empty()) {
      o.data = text;
    } else {
      write_text(out_path, text);
    }
    const auto report = verify_certificate(cert, tol);
    if (!report.pass) {
      o.code = kExitVerifyFailed;
      o.diagnostics = in_path + ": certificate failed verification: " + dump_json(report_to_json(report)) + "\n";
    }
  } catch (const Error& e) {
    o.code = code_for(e);
    o.diagnostics = in_path + ": " + to_string(e.kind()) + ": " + e.what() + "\n";
  } catch (const std::exception& e) {
    o.code = kExitInvalid;
    o.diagnostics = in_path + ": " + e.what() + "\n";
  }
  return o;
}

int cmd_factor(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Tolerance tol = resolve_tolerance(cfg);
  if (!fs::is_directory(cfg.input)) {
    const auto o = factor_file(cfg.input, cfg.output, cfg.method, tol);
    if (!o.data.empty()) out << o.data << '\n';
    err << o.diagnostics;
    return o.code;
  }

  // Directory mode: one output file per input, processed in parallel.
  if (cfg.output.empty()) throw Error(ErrorKind::InvalidArgument, "directory input needs --out DIR");
  fs::create_directories(cfg.output);
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(cfg.input)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());

  std::vector<std::future<std::pair<Outcome, std::string>>> jobs;
  for (const auto& p : inputs) {
    jobs.push_back(std::async(std::launch::async, [&, p] {
      const auto stem = p.stem().string();
      const auto cert_path = (fs::path(cfg.output) / (stem + ".cert.json")).string();
      auto o = factor_file(p.string(), cert_path, cfg.method, tol);
      std::string written = o.code == kExitInvalid ? "" : cert_path;
      if (o.code == kExitObstructed) {
        written = (fs::path(cfg.output) / (stem + ".obstruction.json")).string();
        write_text(written, o.data);
      }
      return std::make_pair(std::move(o), written);
    }));
  }
  Json summary = Json::array();
  int code = kExitOk;
  for (size_t i = 0; i < jobs.size(); ++i) {
    auto [o, written] = jobs[i].get();
    err << o.diagnostics;
    code = std::max(code, o.code);
    summary.push_back(Json{{"input", inputs[i].string()}, {"exit", o.code}, {"output", written}});
  }
  out << dump_json(summary) << '\n';
  return code;
}

int cmd_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Json j = parse_json(read_text(cfg.input));
  if (j.is_object() && !j.contains("factors") && j.contains("kind")) {
    const auto obs = obstruction_from_json(j);
    const bool valid = verify_obstruction(obs, resolve_tolerance(cfg));
    out << dump_json(Json{{"kind", to_string(obs.kind)}, {"valid", valid}}) << '\n';
    if (!valid) err << cfg.input << ": obstruction evidence does not hold\n";
    return valid ? kExitOk : kExitVerifyFailed;
  }
  const auto cert = certificate_from_json(j);
  const auto report = verify_certificate(cert, resolve_tolerance(cfg, cert.tol));
  out << serialize(report) << '\n';
  if (!report.pass) err << cfg.input << ": certificate failed verification\n";
  return report.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_classify(const CliConfig& cfg, std::ostream& out) {
  const auto u = read_matrix(cfg.input);
  out << dump_json(membership_to_json(classify_membership(u, resolve_tolerance(cfg)))) << '\n';
  return kExitOk;
}

int cmd_gen(const CliConfig& cfg, std::ostream& out) {
  if (cfg.dim < 1) throw Error(ErrorKind::InvalidArgument, "--dim must be positive");
  ComplexMatrix u;
  if (cfg.kind == "haar") {
    DetMode mode = DetMode::free;
    if (cfg.det_normalize == "+1" || cfg.det_normalize == "1") {
      mode = DetMode::plus_one;
    } else if (cfg.det_normalize == "-1") {
      mode = DetMode::minus_one;
    } else if (!cfg.det_normalize.empty()) {
      throw Error(ErrorKind::InvalidArgument, "--det-normalize must be +1 or -1");
    }
    u = haar_random_unitary(cfg.dim, cfg.seed, mode);
  } else if (cfg.kind == "arc") {
    u = arc_unitary(cfg.dim, cfg.seed, cfg.arc);
  } else {
    const auto spec = random_finite_spectrum_spec(cfg.dim, cfg.seed);
    u = unitary_with_spectrum(spectrum_values(spec), cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  }
  const auto text = dump_json(matrix_to_json(u));
  if (cfg.output.empty()) {
    out << text << '\n';
  } else {
    write_text(cfg.output, text);
  }
  return kExitOk;
}

// Irrational angles (in turns) rounded to p/q, q = 2, 4, ..., 32. Every
// rounded eigenvalue is exp(i pi p'/q') with 2q' | 64, so each level is a
// product of four symmetries; the error still shrinks to zero.
int cmd_demo_density(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Tolerance tol = resolve_tolerance(cfg);
  const std::vector<double> turns{std::sqrt(2.0) - 1.0, kPi - 3.0, std::exp(1.0) - 2.0};
  constexpr int kLevels = 5;
  constexpr int kMultiplicity = 2 << kLevels;  // 64

  std::vector<cplx> exact;
  for (double t : turns) exact.insert(exact.end(), kMultiplicity, std::polar(1.0, 2.0 * kPi * t));
  const ComplexMatrix q = haar_random_unitary(static_cast<Eigen::Index>(exact.size()), cfg.seed);
  const ComplexMatrix u = q * diagonal(exact) * q.adjoint();

  Json levels = Json::array();
  std::vector<double> errors;
  bool all_verified = true;
  for (int level = 1; level <= kLevels; ++level) {
    const long long denom = 1LL << level;
    FiniteSpectrumSpec spec;
    for (double t : turns) {
      const RationalAngle a(std::llround(t * static_cast<double>(denom)), denom);
      auto it = std::find_if(spec.entries.begin(), spec.entries.end(),
                             [&](const SpectrumEntry& e) { return e.angle == a; });
      if (it == spec.entries.end()) {
        spec.entries.push_back({a, kMultiplicity});
      } else {
        it->multiplicity += kMultiplicity;
      }
    }
    Json entry{{"q", denom}};
    std::vector<cplx> rounded;
    for (double t : turns) {
      const RationalAngle a(std::llround(t * static_cast<double>(denom)), denom);
      rounded.insert(rounded.end(), kMultiplicity, a.value());
    }
    const ComplexMatrix uq = q * diagonal(rounded) * q.adjoint();
    const double approx = operator_norm(u - uq);
    errors.push_back(approx);
    entry["approximation_error"] = approx;
    try {
      // The spec's block order differs from `rounded`, so conjugate the
      // block factorization by the permutation that matches them.
      const auto block = finite_spectrum_four_factor(spec, tol);
      ComplexMatrix perm = ComplexMatrix::Zero(uq.rows(), uq.cols());
      Eigen::Index col = 0;
      for (const auto& e : spec.entries) {
        for (size_t j = 0; j < turns.size(); ++j) {
          const RationalAngle a(std::llround(turns[j] * static_cast<double>(denom)), denom);
          if (!(a == e.angle)) continue;
          for (int m = 0; m < kMultiplicity; ++m) {
            perm(static_cast<Eigen::Index>(j) * kMultiplicity + m, col++) = 1.0;
          }
        }
      }
      const auto cert = conjugate_certificate(conjugate_certificate(block, perm), q);
      const auto report = verify_certificate(make_certificate(uq, cert.factors, cert.method, tol), tol);
      entry["factor_residual"] = report.residual;
      entry["verified"] = report.pass;
      all_verified = all_verified && report.pass;
    } catch (const MultiplicityConstraint& e) {
      entry["factor_residual"] = nullptr;
      entry["skipped"] = e.what();
    }
    levels.push_back(std::move(entry));
  }
  bool decreasing = true;
  for (size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];

  // i I_3 has det -i, so no product of symmetries comes closer than sqrt(2)/3.
  const ComplexMatrix control = kI * identity(3);
  const Json result{
      {"demo", "density"},
      {"dim", u.rows()},
      {"angles_in_turns", turns},
      {"levels", std::move(levels)},
      {"strictly_decreasing", decreasing},
      {"control",
       {{"target", "i I_3"},
        {"det", Json::array({determinant(control).real(), determinant(control).imag()})},
        {"distance_lower_bound_s4", distance_lower_bound_s4(control, tol)}}}};
  out << dump_json(result) << '\n';
  if (!decreasing) err << "demo: approximation errors are not strictly decreasing\n";
  if (!all_verified) err << "demo: a rounded factorization failed verification\n";
  return decreasing && all_verified ? kExitOk : kExitVerifyFailed;
}

void add_tolerance_flags(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("--tol", cfg.tol, "Verification tolerance (same as --verify-tol)")->check(CLI::PositiveNumber);
  sub->add_option("--verify-tol", cfg.verify_tol, "Verification tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--unitary-tol", cfg.unitary_tol, "Unitarity tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--cluster-tol", cfg.cluster_tol, "Eigenvalue clustering tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Factor unitary matrices into products of symmetries", "symfact"};
  app.require_subcommand(1);

  auto* factor = app.add_subcommand("factor", "Factor a unitary (or every *.json in a directory)");
  factor->add_option("--method", cfg.method)
      ->check(CLI::IsMember({"auto", "radjavi", "two", "weyl", "finite-spectrum", "three-scalar"}));
  factor->add_option("--in", cfg.input, "Matrix JSON file or directory")->required();
  factor->add_option("--out", cfg.output, "Certificate path (directory in batch mode)");
  add_tolerance_flags(factor, cfg);

  auto* check = app.add_subcommand("check", "Verify a certificate or obstruction");
  check->add_option("file", cfg.input)->required();
  add_tolerance_flags(check, cfg);

  auto* classify = app.add_subcommand("classify", "Membership in S, S^2, S^3, S^4");
  classify->add_option("--in", cfg.input)->required();
  add_tolerance_flags(classify, cfg);

  auto* gen = app.add_subcommand("gen", "Generate a seeded test unitary");
  gen->add_option("--kind", cfg.kind)->check(CLI::IsMember({"haar", "arc", "finite-spectrum"}));
  gen->add_option("--dim", cfg.dim)->required();
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--det-normalize", cfg.det_normalize, "+1 or -1 (haar only)");
  gen->add_option("--arc", cfg.arc)->check(CLI::Range(1, 4));
  gen->add_option("--out", cfg.output);

  auto* demo = app.add_subcommand("demo", "Run a demonstration");
  demo->add_option("name", cfg.demo)->required()->check(CLI::IsMember({"density"}));
  demo->add_option("--seed", cfg.seed);
  add_tolerance_flags(demo, cfg);

  try {
    // CLI11 wants argv[0] first and mutable-looking storage; it does not modify it.
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*factor) return cmd_factor(cfg, out, err);
    if (*check) return cmd_check(cfg, out, err);
    if (*classify) return cmd_classify(cfg, out);
    if (*gen) return cmd_gen(cfg, out);
    return cmd_demo_density(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace symfact::cli
