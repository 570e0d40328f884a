#include "symfact/generate.hpp"

#include "symfact/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace symfact {

ComplexMatrix unitary_with_spectrum(std::span<const cplx> eigenvalues, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(eigenvalues.size());
  const ComplexMatrix q = haar_random_unitary(n, seed);
  return q * diagonal(eigenvalues) * q.adjoint();
}

ComplexMatrix arc_unitary(int dim, std::uint64_t seed, int arc, double inset) {
  if (arc < 1 || arc > 4) throw Error(ErrorKind::InvalidArgument, "arc must be in 1..4");
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  std::mt19937_64 rng(seed);
  const double quarter = kPi / 2.0;
  const double lo = (arc - 1) * quarter + inset * quarter;
  const double hi = arc * quarter - inset * quarter;
  std::uniform_real_distribution<double> angle(lo, hi);
  std::vector<cplx> lambda(static_cast<size_t>(dim));
  for (auto& z : lambda) z = std::polar(1.0, angle(rng));
  return unitary_with_spectrum(lambda, rng());
}

ComplexMatrix conj_symmetric_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pair_count(0, dim / 2);
  std::uniform_real_distribution<double> angle(0.01, kPi - 0.01);
  std::bernoulli_distribution coin(0.5);
  const int pairs = pair_count(rng);
  std::vector<cplx> lambda;
  for (int p = 0; p < pairs; ++p) {
    const cplx z = std::polar(1.0, angle(rng));
    lambda.push_back(z);
    lambda.push_back(std::conj(z));
  }
  while (static_cast<int>(lambda.size()) < dim) lambda.push_back(coin(rng) ? 1.0 : -1.0);
  std::shuffle(lambda.begin(), lambda.end(), rng);
  return unitary_with_spectrum(lambda, rng());
}

FiniteSpectrumSpec random_finite_spectrum_spec(int dim, std::uint64_t seed, int max_pi_denominator) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  if (max_pi_denominator < 1) throw Error(ErrorKind::InvalidArgument, "denominator bound must be positive");
  std::mt19937_64 rng(seed);
  FiniteSpectrumSpec spec;
  auto add = [&](const RationalAngle& a, int mult) {
    for (auto& e : spec.entries) {
      if (e.angle == a) {
        e.multiplicity += mult;
        return;
      }
    }
    spec.entries.push_back({a, mult});
  };

  int remaining = dim;
  while (remaining > 0) {
    const int max_q = std::min(max_pi_denominator, remaining / 2);
    if (max_q < 1) {
      // Odd leftover: +1 has no multiplicity constraint.
      add(RationalAngle(0, 1), remaining);
      break;
    }
    const int q = std::uniform_int_distribution<int>(1, max_q)(rng);
    // exp(i pi p/q) with gcd(p, q) = 1 and 0 < p < 2q.
    std::vector<int> numerators;
    for (int p = 1; p < 2 * q; ++p) {
      if (std::gcd(p, q) == 1) numerators.push_back(p);
    }
    const int p = numerators[std::uniform_int_distribution<size_t>(0, numerators.size() - 1)(rng)];
    const int copies = std::uniform_int_distribution<int>(1, std::max(1, std::min(2, remaining / (2 * q))))(rng);
    add(RationalAngle(p, 2 * q), copies * 2 * q);
    remaining -= copies * 2 * q;
  }
  return spec;
}

std::vector<cplx> spectrum_values(const FiniteSpectrumSpec& spec) {
  std::vector<cplx> out;
  for (const auto& e : spec.entries) {
    out.insert(out.end(), static_cast<size_t>(e.multiplicity), e.angle.value());
  }
  return out;
}

}  // namespace symfact
