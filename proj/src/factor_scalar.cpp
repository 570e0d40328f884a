#include "blocks.hpp"
#include "symfact/errors.hpp"

#include <array>
#include <cmath>
#include <numeric>

namespace symfact {

RationalAngle::RationalAngle(long long p, long long q) {
  if (q <= 0) throw Error(ErrorKind::InvalidArgument, "angle denominator must be positive");
  p %= q;
  if (p < 0) p += q;
  const long long g = std::gcd(p, q);
  p_ = p / g;
  q_ = q / g;
}

cplx RationalAngle::value() const {
  if (p_ == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(p_) / static_cast<double>(q_));
}

long long RationalAngle::pi_numerator() const {
  return 2 * p_ / std::gcd(2 * p_, q_);
}

long long RationalAngle::pi_denominator() const {
  return q_ / std::gcd(2 * p_, q_);
}

int FiniteSpectrumSpec::dim() const {
  int total = 0;
  for (const auto& e : entries) total += e.multiplicity;
  return total;
}

ComplexMatrix clock_matrix(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "clock size must be positive");
  std::vector<cplx> d(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) d[static_cast<size_t>(j)] = std::polar(1.0, 2.0 * kPi * j / n);
  return diagonal(d);
}

ComplexMatrix shift_matrix(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "shift size must be positive");
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) s((j + 1) % n, j) = 1.0;
  return s;
}

FactorizationCertificate weyl_scalar_four_factor(long long k, int n, const Tolerance& tol) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  // C^k with exact angles: its j-th entry is w^{jk mod n}.
  std::vector<cplx> clock_pow(static_cast<size_t>(n));
  const long long kn = ((k % n) + n) % n;
  for (int j = 0; j < n; ++j) {
    clock_pow[static_cast<size_t>(j)] = std::polar(1.0, 2.0 * kPi * static_cast<double>((j * kn) % n) / n);
  }
  const ComplexMatrix u = diagonal(clock_pow);
  const ComplexMatrix v = shift_matrix(n);
  const long long k2n = ((k % (2LL * n)) + 2LL * n) % (2LL * n);
  const cplx phase = std::polar(1.0, kPi * static_cast<double>(k2n) / n);

  ComplexMatrix r3 = ComplexMatrix::Zero(2 * n, 2 * n);
  r3.topRightCorner(n, n) = phase * (u.adjoint() * v);
  r3.bottomLeftCorner(n, n) = phase * (u * v.adjoint());

  std::vector<ComplexMatrix> factors{detail::block_flip(u.adjoint()), detail::block_swap(n), r3,
                                     detail::block_flip(v.adjoint())};
  return make_certificate(phase * identity(2 * n), std::move(factors), Method::weyl_scalar, tol);
}

FactorizationCertificate scalar_four_factor(const RationalAngle& alpha, int dim,
                                            const Tolerance& tol) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  const cplx value = alpha.value();
  if (alpha.is_sign()) {
    // +-I is already a symmetry.
    std::vector<ComplexMatrix> factors{value * identity(dim), identity(dim), identity(dim),
                                       identity(dim)};
    return make_certificate(value * identity(dim), std::move(factors), Method::weyl_scalar, tol);
  }
  const long long q = alpha.pi_denominator();
  const long long block = 2 * q;
  if (dim % block != 0) {
    throw MultiplicityConstraint(value, dim, static_cast<int>(block));
  }
  const auto weyl = weyl_scalar_four_factor(alpha.pi_numerator(), static_cast<int>(q), tol);
  const auto copies = static_cast<size_t>(dim / block);
  std::vector<ComplexMatrix> factors;
  for (const auto& f : weyl.factors) {
    std::vector<ComplexMatrix> blocks(copies, f);
    factors.push_back(direct_sum(blocks));
  }
  return make_certificate(value * identity(dim), std::move(factors), Method::weyl_scalar, tol);
}

FactorizationCertificate finite_spectrum_four_factor(const FiniteSpectrumSpec& spec,
                                                     const Tolerance& tol) {
  if (spec.entries.empty()) throw Error(ErrorKind::InvalidArgument, "empty spectrum");
  for (size_t a = 0; a < spec.entries.size(); ++a) {
    if (spec.entries[a].multiplicity < 1) {
      throw Error(ErrorKind::InvalidArgument, "multiplicities must be positive");
    }
    for (size_t b = 0; b < a; ++b) {
      if (spec.entries[a].angle == spec.entries[b].angle) {
        throw Error(ErrorKind::InvalidArgument, "spectrum angles must be pairwise distinct");
      }
    }
  }
  std::array<std::vector<ComplexMatrix>, 4> slots;
  std::vector<ComplexMatrix> targets;
  for (const auto& e : spec.entries) {
    auto block = scalar_four_factor(e.angle, e.multiplicity, tol);
    for (size_t j = 0; j < 4; ++j) slots[j].push_back(std::move(block.factors[j]));
    targets.push_back(std::move(block.target));
  }
  std::vector<ComplexMatrix> factors;
  for (const auto& slot : slots) factors.push_back(direct_sum(slot));
  return make_certificate(direct_sum(targets), std::move(factors), Method::finite_spectrum_four,
                          tol);
}

std::optional<RationalAngle> recognize_root_of_unity(cplx z, long long max_denominator, double tol) {
  const double t = unit_angle(z) / (2.0 * kPi);
  for (long long q = 1; q <= max_denominator; ++q) {
    const auto p = static_cast<long long>(std::llround(t * static_cast<double>(q)));
    const RationalAngle candidate(p, q);
    if (candidate.denominator() == q && std::abs(z - candidate.value()) <= tol) return candidate;
  }
  return std::nullopt;
}

FactorizationCertificate finite_spectrum_four_factor(const ComplexMatrix& u, const Tolerance& tol,
                                                     long long max_denominator) {
  detail::require_unitary(u, "U", tol);
  const auto sd = spectral_decompose(u, tol);
  const auto clusters = cluster_eigenvalues(sd.eigenvalues, tol.cluster_tol);

  FiniteSpectrumSpec spec;
  ComplexMatrix basis(u.rows(), u.cols());
  Eigen::Index col = 0;
  for (const auto& c : clusters) {
    const auto angle = recognize_root_of_unity(c.value, max_denominator, tol.verify_tol);
    if (!angle) {
      throw Error(ErrorKind::InvalidArgument,
                  "eigenvalue is not a root of unity of order <= " + std::to_string(max_denominator));
    }
    for (auto& e : spec.entries) {
      if (e.angle == *angle) {
        throw Error(ErrorKind::InvalidArgument, "two eigenvalue clusters round to the same root of unity");
      }
    }
    spec.entries.push_back({*angle, static_cast<int>(c.members.size())});
    for (auto m : c.members) basis.col(col++) = sd.basis.col(m);
  }
  const auto block = finite_spectrum_four_factor(spec, tol);
  std::vector<ComplexMatrix> factors;
  for (const auto& f : block.factors) factors.push_back(detail::conjugate_by(basis, f));
  auto cert = make_certificate(u, std::move(factors), Method::finite_spectrum_four, tol);
  if (!(cert.residual <= tol.verify_tol)) {
    throw ConvergenceFailure("finite-spectrum product misses the target", cert.residual);
  }
  return cert;
}

FactorizationCertificate three_factor_scalar(cplx alpha, int dim, const Tolerance& tol) {
  const std::array<cplx, 4> roots{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
  int which = -1;
  for (int r = 0; r < 4; ++r) {
    if (std::abs(alpha - roots[static_cast<size_t>(r)]) <= tol.unitary_tol) which = r;
  }
  if (which < 0) {
    throw Error(ErrorKind::NotFourthRoot, "alpha I is a product of three symmetries only for alpha in {1, i, -1, -i}");
  }
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  if (dim % 2 != 0) throw Error(ErrorKind::OddDimension, "dimension must be even");

  const cplx root = roots[static_cast<size_t>(which)];
  const ComplexMatrix target = root * identity(dim);
  if (which % 2 == 0) {
    return make_certificate(target, {target, identity(dim), identity(dim)}, Method::three_scalar, tol);
  }
  const Eigen::Index m = dim / 2;
  ComplexMatrix grading = identity(dim);
  grading.bottomRightCorner(m, m) *= -1.0;
  // i I = swap * [[0, -i], [i, 0]] * diag(I, -I); the -i case is the conjugate.
  return make_certificate(target,
                          {detail::block_swap(m), detail::block_flip(root * identity(m)), grading},
                          Method::three_scalar, tol);
}

}  // namespace symfact
