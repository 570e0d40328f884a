// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "symfact/centerfun.hpp"
#include "symfact/certkit.hpp"
#include "symfact/errors.hpp"
#include "symfact/factor.hpp"
#include "symfact/generate.hpp"
#include "symfact/json_io.hpp"
#include "symfact/obstruct.hpp"
#include "symfact/spectrum.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace symfact;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Tolerance at(double verify) {
  Tolerance t;
  t.verify_tol = verify;
  return t;
}

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << x;
  return ss.str();
}

// --- 1 ---------------------------------------------------------------------
Result four_symmetry_iff() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  const Tolerance tol = at(1e-8);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> offset(0.2, kPi - 0.2);
  int positives = 0, negatives = 0;
  for (int n = 2; n <= 10; ++n) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      const auto seed = 100000ULL * static_cast<std::uint64_t>(n) + s;
      const auto u = haar_random_unitary(n, seed, s % 2 ? DetMode::minus_one : DetMode::plus_one);
      try {
        const auto cert = radjavi_four_factor(u, tol);
        if (!verify_certificate(cert, tol).pass) r.fail("certificate failed at n=" + std::to_string(n));
        ++positives;
      } catch (const Error& e) {
        r.fail(std::string("radjavi threw: ") + e.what());
      }

      // det moved to exp(i phi) with phi at least 0.2 away from 0 and pi.
      const auto v = haar_random_unitary(n, seed + 50000);
      const double phi = offset(rng) + (rng() % 2 ? kPi : 0.0);
      const cplx scale = std::polar(1.0, (phi - std::arg(determinant(v))) / n);
      const ComplexMatrix w = scale * v;
      const auto o = det_obstruction(w, tol);
      if (!o || std::get<DeterminantEvidence>(o->evidence).distance <= 0.1) {
        r.fail("det obstruction missing at n=" + std::to_string(n));
      } else {
        ++negatives;
      }
    }
  }
  const double secs = elapsed_since(t0);
  if (secs >= 60.0) r.fail("runtime " + fmt(secs) + " s");
  if (r.pass) {
    r.detail = std::to_string(positives) + " factored, " + std::to_string(negatives) + " obstructed, " +
               fmt(secs) + " s";
  }
  return r;
}

// --- 2 ---------------------------------------------------------------------
std::vector<cplx> conj_closed_spectrum(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.05, kPi - 0.05);
  std::uniform_int_distribution<int> pairs(0, n / 2);
  std::vector<cplx> lambda;
  const int p = pairs(rng);
  for (int k = 0; k < p; ++k) {
    const cplx z = std::polar(1.0, angle(rng));
    lambda.push_back(z);
    lambda.push_back(std::conj(z));
  }
  while (static_cast<int>(lambda.size()) < n) lambda.push_back(rng() % 2 ? 1.0 : -1.0);
  std::shuffle(lambda.begin(), lambda.end(), rng);
  return lambda;
}

Result two_symmetry_dichotomy() {
  Result r;
  const auto t0 = std::chrono::steady_clock::now();
  const Tolerance tol = at(1e-8);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> kick(0.05, 0.3);
  int positives = 0, negatives = 0;
  auto outcome = [&](const ComplexMatrix& u, double& residual) {
    bool factored = false;
    try {
      residual = two_symmetry_factor(u, tol).residual;
      factored = true;
    } catch (const SpectrumNotConjSymmetric&) {
    }
    const bool obstructed = conj_spectrum_obstruction(u, tol).has_value();
    if (factored == obstructed) r.fail("both or neither outcome");
    return factored;
  };
  for (int n = 2; n <= 8; ++n) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      auto lambda = conj_closed_spectrum(n, rng);
      const auto seed = 1000ULL * static_cast<std::uint64_t>(n) + s;
      double residual = 0.0;
      if (!outcome(unitary_with_spectrum(lambda, seed), residual) || residual > 1e-8) {
        r.fail("positive failed at n=" + std::to_string(n));
      } else {
        ++positives;
      }
      // Perturb one eigenvalue; the rotation also breaks +-1 self pairs.
      lambda[0] *= std::polar(1.0, kick(rng));
      residual = 0.0;
      if (outcome(unitary_with_spectrum(lambda, seed), residual)) {
        r.fail("negative factored at n=" + std::to_string(n));
      } else {
        ++negatives;
      }
    }
  }
  const double secs = elapsed_since(t0);
  if (secs >= 30.0) r.fail("runtime " + fmt(secs) + " s");
  if (r.pass) {
    r.detail = std::to_string(positives) + " factored, " + std::to_string(negatives) + " obstructed, " +
               fmt(secs) + " s";
  }
  return r;
}

// --- 3 ---------------------------------------------------------------------
Result weyl_scalar() {
  Result r;
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n) {
    const auto c = clock_matrix(n);
    const auto s = shift_matrix(n);
    const cplx w = std::polar(1.0, 2 * kPi / n);
    ComplexMatrix ck = identity(n);
    for (int k = 0; k < n; ++k) {
      const double comm = operator_norm(ck * s - std::pow(w, k) * s * ck);
      const auto cert = weyl_scalar_four_factor(k, n);
      const ComplexMatrix expected = std::polar(1.0, kPi * k / n) * identity(2 * n);
      double defect = std::max(comm, operator_norm(cert.product() - expected));
      for (const auto& f : cert.factors) {
        defect = std::max({defect, self_adjoint_defect(f), involution_defect(f)});
      }
      worst = std::max(worst, defect);
      if (defect > 1e-12) r.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + " defect " + fmt(defect));
      ck = ck * c;
    }
  }
  if (r.pass) r.detail = "78 (n, k) pairs, worst defect " + fmt(worst);
  return r;
}

// --- 4 ---------------------------------------------------------------------
Result finite_spectrum() {
  Result r;
  const Tolerance tol = at(1e-8);
  std::mt19937_64 rng(4);
  int rejected = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const int dim = std::uniform_int_distribution<int>(1, 48)(rng);
    const auto spec = random_finite_spectrum_spec(dim, 4000 + s, 6);
    try {
      const auto cert = finite_spectrum_four_factor(spec, tol);
      if (!verify_certificate(cert, tol).pass) r.fail("spec " + std::to_string(s) + " failed verification");
    } catch (const Error& e) {
      r.fail(std::string("spec threw: ") + e.what());
    }

    // Break the rule: bump one non-sign entry by one, or add one if none exists.
    auto bad = spec;
    bool bumped = false;
    for (auto& e : bad.entries) {
      if (!e.angle.is_sign()) {
        e.multiplicity += 1;
        bumped = true;
        break;
      }
    }
    if (!bumped) bad.entries.push_back({RationalAngle(1, 2 * (1 + static_cast<long long>(s % 6)) + 1), 1});
    try {
      finite_spectrum_four_factor(bad, tol);
      r.fail("violating spec accepted");
    } catch (const MultiplicityConstraint&) {
      ++rejected;
    } catch (const Error& e) {
      r.fail(std::string("violating spec threw the wrong error: ") + e.what());
    }
  }
  if (r.pass) r.detail = "50 specs factored, " + std::to_string(rejected) + " violating specs rejected";
  return r;
}

// --- 5 ---------------------------------------------------------------------
Result three_symmetry_obstruction() {
  Result r;
  const double bound = 2.0 * std::sin(kPi / 8.0);
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      const int dim = static_cast<int>(1 + s % 8);
      const auto u = arc_unitary(dim, 5000ULL * static_cast<std::uint64_t>(k) + s, k);
      const auto o = quadrant_obstruction(u);
      if (!o || std::get<QuadrantEvidence>(o->evidence).arc != k) {
        r.fail("no arc-" + std::to_string(k) + " certificate");
        continue;
      }
      const double dist = operator_norm(u - arc_midpoint(k) * identity(dim));
      worst = std::max(worst, dist);
      if (!(dist < bound)) r.fail("bound violated: " + fmt(dist));
      const double eps = std::get<QuadrantEvidence>(o->evidence).margin;
      std::uniform_real_distribution<double> delta(-eps / 2, eps / 2);
      for (int t = 0; t < 20; ++t) {
        const auto moved = quadrant_obstruction(std::polar(1.0, delta(rng)) * u);
        if (!moved || std::get<QuadrantEvidence>(moved->evidence).arc != k) r.fail("not open under perturbation");
      }
    }
  }
  if (r.pass) r.detail = "400 instances, max ||U - xi I|| = " + fmt(worst) + " < " + fmt(bound);
  return r;
}

// --- 6 ---------------------------------------------------------------------
Result explicit_identities() {
  Result r;
  ComplexMatrix swap(2, 2), flip(2, 2), grading(2, 2);
  swap << 0, 1, 1, 0;
  flip << 0, -kI, kI, 0;
  grading << 1, 0, 0, -1;
  const auto cert = three_factor_scalar(kI, 2);
  const std::vector<ComplexMatrix> expected{swap, flip, grading};
  double diff = (cert.product() - kI * identity(2)).cwiseAbs().maxCoeff();
  if (cert.factors.size() != 3) {
    r.fail("expected three factors");
  } else {
    for (size_t j = 0; j < 3; ++j) diff = std::max(diff, (cert.factors[j] - expected[j]).cwiseAbs().maxCoeff());
  }
  if (diff > 1e-15) r.fail("entrywise difference " + fmt(diff));
  try {
    three_factor_scalar(std::polar(1.0, 2 * kPi / 3), 2);
    r.fail("exp(2 pi i/3) accepted");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFourthRoot) r.fail(std::string("wrong rejection: ") + e.what());
  }
  if (r.pass) r.detail = "i I_2 reproduced (max entry diff " + fmt(diff) + "), exp(2 pi i/3) rejected";
  return r;
}

// --- 7 ---------------------------------------------------------------------
Result lemma_steps() {
  Result r;
  const Tolerance tol = at(1e-8);
  double worst = 0.0;
  auto rank = [](const ComplexMatrix& e) { return std::lround(e.trace().real()); };
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Eigen::Index n = 4 * static_cast<Eigen::Index>(1 + s % 3);
    const auto u = haar_random_unitary(n, 7000 + 2 * s);
    const auto v = haar_random_unitary(n, 7001 + 2 * s);
    const auto step = lemma_two_uni_step(u, v, tol);
    const ComplexMatrix rhs = step.r1 * step.r2 * u * (step.vp * step.projection + identity(n) - step.projection);
    const double res = operator_norm(u * v - rhs);
    worst = std::max(worst, res);
    if (res > 1e-8) r.fail("two-unitary residual " + fmt(res));
    if (rank(step.projection) != n / 2 || !is_projection(step.projection, tol)) r.fail("two-unitary rank");
    if (!is_symmetry(step.r1, tol) || !is_symmetry(step.r2, tol)) r.fail("two-unitary factor not a symmetry");
  }
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Eigen::Index m = 2 * static_cast<Eigen::Index>(1 + s % 2);
    const Eigen::Index n = 3 * m;
    const auto q = haar_random_unitary(n, 8000 + 4 * s);
    ComplexMatrix core = ComplexMatrix::Zero(n, n), proj = ComplexMatrix::Zero(n, n), b = ComplexMatrix::Zero(n, n);
    core.topLeftCorner(2 * m, 2 * m) = haar_random_unitary(2 * m, 8001 + 4 * s);
    core.bottomRightCorner(m, m) = haar_random_unitary(m, 8002 + 4 * s);
    proj.topLeftCorner(2 * m, 2 * m) = identity(2 * m);
    b.topLeftCorner(2 * m, 2 * m) = haar_random_unitary(2 * m, 8003 + 4 * s);
    const ComplexMatrix u = q * core * q.adjoint(), e1 = q * proj * q.adjoint(), b1 = q * b * q.adjoint();
    const auto step = lemma_four_sym_step(u, e1, b1, tol);
    ComplexMatrix rhs = identity(n);
    for (const auto& f : step.symmetries) {
      if (!is_symmetry(f, tol)) r.fail("four-symmetry factor not a symmetry");
      rhs = rhs * f;
    }
    rhs = rhs * (b1 + step.b2 + identity(n) - e1 - step.e2);
    const double res = operator_norm(u - rhs);
    worst = std::max(worst, res);
    if (res > 1e-8) r.fail("four-symmetry residual " + fmt(res));
    if (rank(step.e2) != n / 6 || !is_projection(step.e2, tol)) r.fail("four-symmetry rank");
  }
  if (r.pass) r.detail = "150 steps, worst residual " + fmt(worst);
  return r;
}

// --- 8 ---------------------------------------------------------------------
MatrixField random_field(std::mt19937_64& rng, std::uint64_t seed, bool allow_free) {
  MatrixField f;
  const int points = std::uniform_int_distribution<int>(1, 4)(rng);
  f.fiber_dim = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int p = 0; p < points; ++p) {
    const std::string label = "x" + std::to_string(p);
    f.points.push_back(label);
    const int mode = std::uniform_int_distribution<int>(allow_free ? 0 : 1, 2)(rng);
    f.values[label] = haar_random_unitary(f.fiber_dim, seed * 8 + static_cast<std::uint64_t>(p),
                                          mode == 0 ? DetMode::free : mode == 1 ? DetMode::plus_one : DetMode::minus_one);
  }
  return f;
}

Result center_valued_determinant() {
  Result r;
  const Tolerance tol = at(1e-8);
  std::mt19937_64 rng(8);
  int factored = 0, obstructed = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto f = random_field(rng, 9000 + s, s % 2 == 0);
    std::vector<std::string> bad_points;
    for (const auto& [p, d] : det_c(f)) {
      if (distance_to_signs(d) > tol.verify_tol) bad_points.push_back(p);
    }
    const auto result = field_four_factor(f, tol);
    if (const auto* fac = std::get_if<std::array<MatrixField, 4>>(&result)) {
      if (!bad_points.empty()) r.fail("factored a field with det_c off {+1,-1}");
      for (const auto& p : f.points) {
        ComplexMatrix prod = identity(f.fiber_dim);
        for (const auto& g : *fac) {
          if (!is_symmetry(g.at(p), tol)) r.fail("factor field is not a symmetry field");
          prod = prod * g.at(p);
        }
        if (operator_norm(prod - f.at(p)) > tol.verify_tol) r.fail("fiberwise product mismatch");
      }
      ++factored;
    } else {
      const auto& obs = std::get<FieldObstruction>(result).per_point;
      std::vector<std::string> named;
      for (const auto& o : obs) named.push_back(o.base_point.value_or("?"));
      std::sort(named.begin(), named.end());
      std::sort(bad_points.begin(), bad_points.end());
      if (named != bad_points || named.empty()) r.fail("obstruction names the wrong points");
      ++obstructed;
    }
  }
  if (factored == 0 || obstructed == 0) r.fail("one direction was never exercised");

  int checked = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto f = random_field(rng, 20000 + s, true);
    MatrixField g = f;
    for (size_t i = 0; i < g.points.size(); ++i) {
      g.values[g.points[i]] = haar_random_unitary(g.fiber_dim, 30000 + 8 * s + i);
    }
    if (!detc_properties_check(f, g, tol)) {
      r.fail("detc_properties_check failed on pair " + std::to_string(s));
    } else {
      ++checked;
    }
  }
  if (r.pass) {
    r.detail = std::to_string(factored) + " fields factored, " + std::to_string(obstructed) + " obstructed, " +
               std::to_string(checked) + " det_c property checks";
  }
  return r;
}

// --- 9 ---------------------------------------------------------------------
int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

Result end_to_end_cli() {
  Result r;
  const std::string bin = SYMFACT_CLI_PATH;
  const auto dir = fs::temp_directory_path() / "symfact_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
  auto cli = [&](const std::string& args, const std::string& tag) {
    return shell("'" + bin + "' " + args + " > " + q(dir / (tag + ".stdout")) + " 2> " + q(dir / (tag + ".stderr")));
  };

  // gen, then factor -> check in separate processes for every method.
  if (cli("gen --kind haar --dim 6 --seed 2 --det-normalize -1 --out " + q(dir / "radjavi.json"), "gen1") != 0 ||
      cli("gen --kind finite-spectrum --dim 12 --seed 3 --out " + q(dir / "finite-spectrum.json"), "gen2") != 0 ||
      cli("gen --kind haar --dim 5 --seed 4 --det-normalize +1 --out " + q(dir / "auto.json"), "gen3") != 0) {
    r.fail("gen failed");
  }
  put(dir / "two.json", dump_json(matrix_to_json(conj_symmetric_unitary(6, 5))));
  put(dir / "weyl.json", dump_json(matrix_to_json(std::polar(1.0, kPi / 3) * identity(6))));
  put(dir / "three-scalar.json", dump_json(matrix_to_json(-kI * identity(4))));
  for (const std::string method : {"auto", "radjavi", "two", "weyl", "finite-spectrum", "three-scalar"}) {
    const auto in = dir / (method + ".json");
    const auto cert = dir / (method + ".cert.json");
    const int f = cli("factor --method " + method + " --in " + q(in) + " --out " + q(cert), "factor-" + method);
    const int c = cli("check " + q(cert), "check-" + method);
    if (f != 0 || c != 0) r.fail(method + ": factor exit " + std::to_string(f) + ", check exit " + std::to_string(c));
  }

  // Exit code table.
  put(dir / "obstructed.json", dump_json(matrix_to_json(std::polar(1.0, kPi / 4) * identity(2))));
  if (cli("factor --method radjavi --in " + q(dir / "obstructed.json"), "obstructed") != 1) r.fail("exit 1 expected");
  try {
    const auto obs = deserialize_obstruction(slurp(dir / "obstructed.stdout"));
    if (obs.kind != ObstructionKind::determinant) r.fail("expected a determinant obstruction");
  } catch (const Error& e) {
    r.fail(std::string("obstruction output unreadable: ") + e.what());
  }
  put(dir / "truncated.json", "{\"rows\": 2, \"cols\": 2, \"data\": [[1, 0]");
  if (cli("factor --in " + q(dir / "truncated.json"), "invalid") != 2) r.fail("exit 2 expected");
  auto tampered = parse_json(slurp(dir / "radjavi.cert.json"));
  tampered["factors"][0]["data"][1][0] = tampered["factors"][0]["data"][1][0].get<double>() + 1e-3;
  put(dir / "tampered.json", dump_json(tampered));
  if (cli("check " + q(dir / "tampered.json"), "tampered") != 3) r.fail("exit 3 expected");
  if (cli("classify --in " + q(dir / "auto.json"), "classify") != 0) r.fail("classify exit 0 expected");

  // Rounding demo.
  if (cli("demo density", "demo") != 0) r.fail("demo exit code");
  std::string errors;
  try {
    const auto demo = parse_json(slurp(dir / "demo.stdout"));
    double prev = INFINITY;
    for (const auto& level : demo["levels"]) {
      const double e = level["approximation_error"].get<double>();
      if (!(e < prev)) r.fail("demo errors not strictly decreasing");
      if (level["verified"] != true) r.fail("demo level not verified");
      errors += (errors.empty() ? "" : " > ") + fmt(e);
      prev = e;
    }
    if (demo["strictly_decreasing"] != true) r.fail("demo reports non-decreasing errors");
  } catch (const std::exception& e) {
    r.fail(std::string("demo output unreadable: ") + e.what());
  }
  if (r.pass) r.detail = "6 methods round-tripped, exit codes 0/1/2/3 observed, demo errors " + errors;
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"four-symmetry iff (radjavi vs det obstruction)", four_symmetry_iff},
      {"two-symmetry dichotomy", two_symmetry_dichotomy},
      {"Weyl scalar products", weyl_scalar},
      {"finite-spectrum assembly", finite_spectrum},
      {"three-symmetry quadrant obstruction", three_symmetry_obstruction},
      {"explicit +-i identities", explicit_identities},
      {"lemma steps", lemma_steps},
      {"center-valued determinant", center_valued_determinant},
      {"end-to-end CLI", end_to_end_cli},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.fail(std::string("uncaught exception: ") + e.what());
    }
    failures += r.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << ": " << (r.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << r.detail << ")" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
