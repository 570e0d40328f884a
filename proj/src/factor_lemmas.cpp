#include "blocks.hpp"
#include "symfact/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace symfact {

TwoUnitaryStep lemma_two_uni_step(const ComplexMatrix& u, const ComplexMatrix& v,
                                  const Tolerance& tol) {
  detail::require_unitary(u, "U", tol);
  detail::require_unitary(v, "V", tol);
  if (u.rows() != v.rows()) throw Error(ErrorKind::ShapeMismatch, "U and V differ in size");
  const auto n = u.rows();
  if (n % 2 != 0) throw Error(ErrorKind::OddDimension, "dimension must be even");
  const auto m = n / 2;

  // V = W diag(V1, V2) W^* with V1, V2 the first and second half of the
  // sorted spectrum.
  const auto sd = spectral_decompose(v, tol);
  const ComplexMatrix& w = sd.basis;

  detail::PairedDiagonal x{n, {}, {}};
  std::vector<cplx> vp_diag(static_cast<size_t>(n), cplx{1.0, 0.0});
  std::vector<cplx> e_diag(static_cast<size_t>(n), cplx{0.0, 0.0});
  for (Eigen::Index j = 0; j < m; ++j) {
    const cplx v1 = sd.eigenvalues[static_cast<size_t>(j)];
    const cplx v2 = sd.eigenvalues[static_cast<size_t>(m + j)];
    x.pairs.push_back({j, m + j, v1});
    vp_diag[static_cast<size_t>(m + j)] = v1 * v2;
    e_diag[static_cast<size_t>(m + j)] = 1.0;
  }

  TwoUnitaryStep step;
  // U W diag(V1, V1^*) W^* U^* splits into two conjugated symmetries.
  const auto [s, t] = detail::factor_paired_diagonal(x, tol.unitary_tol);
  const ComplexMatrix uw = u * w;
  step.r1 = detail::conjugate_by(uw, s);
  step.r2 = detail::conjugate_by(uw, t);
  step.projection = detail::conjugate_by(w, diagonal(e_diag));
  step.vp = detail::conjugate_by(w, diagonal(vp_diag));

  const ComplexMatrix id = identity(n);
  const double residual = operator_norm(
      u * v - step.r1 * step.r2 * u * (step.vp * step.projection + id - step.projection));
  if (!(residual <= tol.verify_tol)) {
    throw ConvergenceFailure("two-unitary step identity fails", residual);
  }
  return step;
}

FourSymmetryStep lemma_four_sym_step(const ComplexMatrix& u, const ComplexMatrix& e1,
                                     const ComplexMatrix& b1, const Tolerance& tol) {
  detail::require_unitary(u, "U", tol);
  require_square_finite(e1, "E1");
  require_square_finite(b1, "B1");
  const auto n = u.rows();
  if (e1.rows() != n || b1.rows() != n) {
    throw Error(ErrorKind::ShapeMismatch, "U, E1 and B1 must share a size");
  }
  if (n % 3 != 0 || (n / 3) % 2 != 0) {
    throw Error(ErrorKind::DimensionNotDivisible, "dimension must be 3m with m even");
  }
  const auto m = n / 3;
  if (!is_projection(e1, tol)) throw Error(ErrorKind::InvalidArgument, "E1 is not a projection");
  const double rank = e1.trace().real();
  if (std::abs(rank - static_cast<double>(2 * m)) > 1e-6) {
    throw Error(ErrorKind::RankMismatch, "rank(E1) must be 2m = " + std::to_string(2 * m));
  }
  if (operator_norm(u * e1 - e1 * u) > tol.verify_tol) {
    throw Error(ErrorKind::NotCommuting, "U does not commute with E1");
  }
  const double b1_defect = std::max({operator_norm(b1 * e1 - b1), operator_norm(e1 * b1 - b1),
                                     operator_norm(b1.adjoint() * b1 - e1)});
  if (b1_defect > tol.verify_tol) throw NotUnitary("B1 on range(E1)", b1_defect);

  const ComplexMatrix id = identity(n);
  // Reduce to B1 = E1.
  const ComplexMatrix u_red = u * (b1.adjoint() + id - e1);

  // Orthonormal bases of range(E1) (last 2m eigenvectors) and its complement.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (e1 + e1.adjoint()));
  const ComplexMatrix complement = es.eigenvectors().leftCols(m);
  const ComplexMatrix range = es.eigenvectors().rightCols(2 * m);

  // Diagonalize U on range(E1) so that U = diag(U1, U2, U3) in block form.
  const ComplexMatrix top = range.adjoint() * u_red * range;
  Tolerance inner = tol;
  inner.unitary_tol = std::max(tol.unitary_tol, 10.0 * unitary_defect(top));
  const auto sd = spectral_decompose(top, inner);
  ComplexMatrix w(n, n);
  w.leftCols(2 * m) = range * sd.basis;
  w.rightCols(m) = complement;
  const ComplexMatrix u3 = complement.adjoint() * u_red * complement;

  std::vector<cplx> a(sd.eigenvalues);
  ComplexMatrix u1(m, m);
  ComplexMatrix u2(m, m);
  u1.setZero();
  u2.setZero();
  for (Eigen::Index j = 0; j < m; ++j) {
    u1(j, j) = a[static_cast<size_t>(j)];
    u2(j, j) = a[static_cast<size_t>(m + j)];
  }

  // U3 = (U2^* U1^*)(U1 U2 U3) = S1 S2 (U2^* U1^*)(V'E + I - E)
  const auto inner_step = lemma_two_uni_step(u2.adjoint() * u1.adjoint(), u1 * u2 * u3, inner);

  // diag(U1, U1^*, S1 S2) = R1 R2
  detail::PairedDiagonal first{2 * m, {}, {}};
  for (Eigen::Index j = 0; j < m; ++j) first.pairs.push_back({j, m + j, a[static_cast<size_t>(j)]});
  const auto [j12, k12] = detail::factor_paired_diagonal(first, tol.unitary_tol);
  const ComplexMatrix r1 = direct_sum(std::vector<ComplexMatrix>{j12, inner_step.r1});
  const ComplexMatrix r2 = direct_sum(std::vector<ComplexMatrix>{k12, inner_step.r2});

  // diag(I, U1 U2, U2^* U1^*) = R3 R4
  detail::PairedDiagonal second{n, {}, {}};
  for (Eigen::Index j = 0; j < m; ++j) {
    second.singles.push_back({j, 1.0});
    second.pairs.push_back({m + j, 2 * m + j, a[static_cast<size_t>(j)] * a[static_cast<size_t>(m + j)]});
  }
  const auto [r3, r4] = detail::factor_paired_diagonal(second, tol.unitary_tol);

  FourSymmetryStep step;
  for (const auto* r : {&r1, &r2, &r3, &r4}) step.symmetries.push_back(detail::conjugate_by(w, *r));
  ComplexMatrix e2_block = ComplexMatrix::Zero(n, n);
  ComplexMatrix b2_block = ComplexMatrix::Zero(n, n);
  e2_block.bottomRightCorner(m, m) = inner_step.projection;
  b2_block.bottomRightCorner(m, m) = inner_step.vp * inner_step.projection;
  step.e2 = detail::conjugate_by(w, e2_block);
  step.b2 = detail::conjugate_by(w, b2_block);

  const ComplexMatrix rest = b1 + step.b2 + id - e1 - step.e2;
  const double residual = operator_norm(u - ordered_product(step.symmetries, n) * rest);
  if (!(residual <= tol.verify_tol)) {
    throw ConvergenceFailure("four-symmetry step identity fails", residual);
  }
  return step;
}

}  // namespace symfact
