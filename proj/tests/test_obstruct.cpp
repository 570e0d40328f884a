#include "oracles.hpp"

#include "symfact/errors.hpp"
#include "symfact/factor.hpp"
#include "symfact/generate.hpp"
#include "symfact/obstruct.hpp"
#include "symfact/spectrum.hpp"

#include <doctest.h>

#include <random>

using namespace symfact;

namespace {

ComplexMatrix diag(std::initializer_list<cplx> d) {
  std::vector<cplx> v(d);
  return diagonal(v);
}

const double kBound = 2.0 * std::sin(kPi / 8.0);

// Largest excluded length among obstructions that fire on u.
int max_excluded(const ComplexMatrix& u) {
  int best = 0;
  for (const auto& o : {det_obstruction(u), conj_spectrum_obstruction(u), quadrant_obstruction(u),
                        not_symmetry_obstruction(u)}) {
    if (o) best = std::max(best, o->excluded_length);
  }
  return best;
}

}  // namespace

TEST_SUITE("obstruct") {

TEST_CASE("det_obstruction examples") {
  const auto o = det_obstruction(std::polar(1.0, kPi / 4) * identity(2));
  REQUIRE(o);
  const auto& ev = std::get<DeterminantEvidence>(o->evidence);
  CHECK(std::abs(ev.det - kI) <= 1e-15);
  CHECK(ev.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(o->excluded_length == kAllLengths);

  CHECK_FALSE(det_obstruction(diag({1, -1, -1})));
  CHECK_FALSE(det_obstruction(haar_random_unitary(5, 11, DetMode::plus_one)));
}

TEST_CASE("conj_spectrum_obstruction examples") {
  const auto o = conj_spectrum_obstruction(diag({kI, kI}));
  REQUIRE(o);
  CHECK(std::abs(std::get<ConjSpectrumEvidence>(o->evidence).eigenvalue - kI) <= 1e-12);
  CHECK(o->excluded_length == 2);
  CHECK_FALSE(conj_spectrum_obstruction(diag({kI, -kI})));
  const cplx z = std::polar(1.0, kPi / 7);
  CHECK_FALSE(conj_spectrum_obstruction(diag({z, std::conj(z), 1.0})));
}

TEST_CASE("quadrant_obstruction examples") {
  const auto a = quadrant_obstruction(std::polar(1.0, kPi / 4) * identity(3));
  REQUIRE(a);
  CHECK(std::get<QuadrantEvidence>(a->evidence).arc == 1);
  CHECK(a->excluded_length == 3);

  CHECK_FALSE(quadrant_obstruction(diag({1.0, kI})));

  const cplx p = std::polar(1.0, kPi / 8), q = std::polar(1.0, kPi / 6);
  const auto b = quadrant_obstruction(diag({p, q}));
  REQUIRE(b);
  const auto& ev = std::get<QuadrantEvidence>(b->evidence);
  CHECK(ev.arc == 1);
  CHECK(ev.margin == doctest::Approx(std::min(std::abs(p - 1.0), std::abs(q - kI))).epsilon(1e-12));
}

TEST_CASE("classify_membership examples") {
  const auto a = classify_membership(std::polar(1.0, kPi / 4) * identity(2));
  for (const auto& l : a.lengths) {
    CHECK(l.verdict == Verdict::non_member);
    CHECK(l.obstruction);
  }

  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const auto b = classify_membership(swap);
  for (const auto& l : b.lengths) {
    CHECK(l.verdict == Verdict::member);
    REQUIRE(l.certificate);
    CHECK(static_cast<int>(l.certificate->factors.size()) == l.length);
    CHECK(l.certificate->residual <= 1e-12);
  }

  const auto c = classify_membership(diag({kI, -kI}));
  CHECK(c.lengths[0].verdict == Verdict::non_member);
  for (int l = 1; l < 4; ++l) {
    CHECK(c.lengths[static_cast<size_t>(l)].verdict == Verdict::member);
    CHECK(c.lengths[static_cast<size_t>(l)].certificate->factors.size() == static_cast<size_t>(l + 1));
  }
}

TEST_CASE("classify recognizes scalar i I at length three") {
  const auto r = classify_membership(kI * identity(4));
  CHECK(r.lengths[1].verdict == Verdict::non_member);
  CHECK(r.lengths[2].verdict == Verdict::member);
  CHECK(r.lengths[3].verdict == Verdict::member);
}

TEST_CASE("length three can be unknown") {
  // det +1, spectrum not conjugation-closed and not confined to one arc.
  const cplx a = std::polar(1.0, 0.3), b = std::polar(1.0, 2.0);
  const auto r = classify_membership(diag({a, b, std::conj(a * b)}));
  CHECK(r.lengths[1].verdict == Verdict::non_member);
  CHECK(r.lengths[2].verdict == Verdict::unknown);
  CHECK(r.lengths[3].verdict == Verdict::member);
}

TEST_CASE("soundness: constructions never meet a blocking obstruction") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto n = static_cast<int>(2 + s % 7);
    const auto two = two_symmetry_factor(conj_symmetric_unitary(n, s));
    CHECK(max_excluded(two.target) < 2);
    const auto four = radjavi_four_factor(haar_random_unitary(n, s, DetMode::plus_one));
    CHECK(max_excluded(four.target) < 4);
    const auto fs = finite_spectrum_four_factor(random_finite_spectrum_spec(2 * n, s));
    CHECK(max_excluded(fs.target) < 4);
  }
  for (cplx a : {cplx(1), kI, cplx(-1), -kI}) {
    const auto c = three_factor_scalar(a, 4);
    CHECK(max_excluded(c.target) < 3);
  }
}

TEST_CASE("quadrant obstruction implies the distance bound") {
  for (int k = 1; k <= 4; ++k) {
    for (std::uint64_t s = 0; s < 25; ++s) {
      const auto u = arc_unitary(static_cast<int>(1 + s % 8), 100 * k + s, k);
      const auto o = quadrant_obstruction(u);
      REQUIRE(o);
      CHECK(std::get<QuadrantEvidence>(o->evidence).arc == k);
      CHECK(oracle::svd_norm(u - arc_midpoint(k) * identity(u.rows())) < kBound);
    }
  }
}

TEST_CASE("quadrant obstruction is open") {
  std::mt19937_64 rng(17);
  for (int k = 1; k <= 4; ++k) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto u = arc_unitary(4, 700 + 10 * k + s, k);
      const auto o = quadrant_obstruction(u);
      REQUIRE(o);
      const double eps = std::get<QuadrantEvidence>(o->evidence).margin;
      // chord eps corresponds to an angle above eps, so |delta| < eps/2 stays inside
      std::uniform_real_distribution<double> delta(-eps / 2, eps / 2);
      for (int t = 0; t < 5; ++t) {
        const auto moved = quadrant_obstruction(std::polar(1.0, delta(rng)) * u);
        REQUIRE(moved);
        CHECK(std::get<QuadrantEvidence>(moved->evidence).arc == k);
        const auto q = oracle::gram_schmidt_unitary(4, static_cast<unsigned>(t + 31 * s));
        CHECK(quadrant_obstruction(q * u * q.adjoint()));
      }
    }
  }
}

TEST_CASE("length two dichotomy") {
  std::mt19937_64 rng(3);
  for (std::uint64_t s = 0; s < 60; ++s) {
    const int n = static_cast<int>(2 + s % 7);
    ComplexMatrix u = conj_symmetric_unitary(n, s);
    if (s % 2) u = u * std::polar(1.0, 0.25);
    bool factored = true;
    try {
      two_symmetry_factor(u);
    } catch (const SpectrumNotConjSymmetric&) {
      factored = false;
    }
    CHECK(factored != conj_spectrum_obstruction(u).has_value());
  }
}

TEST_CASE("length four dichotomy") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto n = static_cast<Eigen::Index>(1 + s % 8);
    const auto u = haar_random_unitary(n, s, s % 3 == 0 ? DetMode::minus_one : DetMode::free);
    bool factored = true;
    try {
      radjavi_four_factor(u);
    } catch (const DeterminantObstruction&) {
      factored = false;
    }
    CHECK(factored != det_obstruction(u).has_value());
  }
}

TEST_CASE("obstructions reject non-unitary input") {
  ComplexMatrix shear(2, 2);
  shear << 1, 1, 0, 1;
  CHECK_THROWS_AS(det_obstruction(shear), NotUnitary);
  CHECK_THROWS_AS(classify_membership(shear), NotUnitary);
}

}  // TEST_SUITE
