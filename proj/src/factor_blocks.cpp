#include "blocks.hpp"
#include "symfact/errors.hpp"
#include "symfact/spectrum.hpp"

#include <cmath>

namespace symfact {

const char* to_string(Method m) {
  switch (m) {
    case Method::conjugate_pair: return "conjugate_pair";
    case Method::two_symmetry: return "two_symmetry";
    case Method::radjavi_four: return "radjavi_four";
    case Method::weyl_scalar: return "weyl_scalar";
    case Method::finite_spectrum_four: return "finite_spectrum_four";
    case Method::three_scalar: return "three_scalar";
    case Method::lemma_two_uni: return "lemma_two_uni";
    case Method::lemma_four_sym: return "lemma_four_sym";
    case Method::trivial: return "trivial";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view s) {
  for (Method m : {Method::conjugate_pair, Method::two_symmetry, Method::radjavi_four,
                   Method::weyl_scalar, Method::finite_spectrum_four, Method::three_scalar,
                   Method::lemma_two_uni, Method::lemma_four_sym, Method::trivial}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

FactorizationCertificate make_certificate(ComplexMatrix target, std::vector<ComplexMatrix> factors,
                                          Method method, const Tolerance& tol) {
  FactorizationCertificate cert;
  cert.target = std::move(target);
  cert.factors = std::move(factors);
  cert.method = method;
  cert.tol = tol;
  cert.residual = operator_norm(cert.product() - cert.target);
  return cert;
}

FactorizationCertificate pad_to_length(FactorizationCertificate cert, size_t length) {
  while (cert.factors.size() < length) cert.factors.push_back(identity(cert.target.rows()));
  return cert;
}

FactorizationCertificate conjugate_certificate(const FactorizationCertificate& cert,
                                               const ComplexMatrix& q) {
  std::vector<ComplexMatrix> factors;
  factors.reserve(cert.factors.size());
  for (const auto& f : cert.factors) factors.push_back(detail::conjugate_by(q, f));
  return make_certificate(detail::conjugate_by(q, cert.target), std::move(factors), cert.method,
                          cert.tol);
}

namespace detail {

std::pair<ComplexMatrix, ComplexMatrix> factor_paired_diagonal(const PairedDiagonal& d,
                                                               double snap_tol) {
  ComplexMatrix s = ComplexMatrix::Zero(d.dim, d.dim);
  ComplexMatrix t = ComplexMatrix::Zero(d.dim, d.dim);
  for (const auto& p : d.pairs) {
    const auto [bs, bt] = conjugate_pair_block(p.value, snap_tol);
    const Eigen::Index idx[2] = {p.first, p.second};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        s(idx[r], idx[c]) = bs(r, c);
        t(idx[r], idx[c]) = bt(r, c);
      }
    }
  }
  for (const auto& single : d.singles) {
    s(single.index, single.index) = single.sign;
    t(single.index, single.index) = 1.0;
  }
  return {s, t};
}

ComplexMatrix block_swap(Eigen::Index m) {
  ComplexMatrix j = ComplexMatrix::Zero(2 * m, 2 * m);
  j.topRightCorner(m, m) = identity(m);
  j.bottomLeftCorner(m, m) = identity(m);
  return j;
}

ComplexMatrix block_flip(const ComplexMatrix& a) {
  const auto m = a.rows();
  ComplexMatrix k = ComplexMatrix::Zero(2 * m, 2 * m);
  k.topRightCorner(m, m) = a.adjoint();
  k.bottomLeftCorner(m, m) = a;
  return k;
}

void require_unitary(const ComplexMatrix& a, const char* name, const Tolerance& tol) {
  require_square_finite(a, name);
  const double defect = unitary_defect(a);
  if (defect > tol.unitary_tol) throw NotUnitary(name, defect);
}

}  // namespace detail

std::pair<ComplexMatrix, ComplexMatrix> conjugate_pair_block(cplx a, double snap_tol) {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  ComplexMatrix t = ComplexMatrix::Zero(2, 2);
  if (std::abs(a - 1.0) <= snap_tol || std::abs(a + 1.0) <= snap_tol) {
    const double sign = a.real() > 0.0 ? 1.0 : -1.0;
    s(0, 0) = s(1, 1) = sign;
    t(0, 0) = t(1, 1) = 1.0;
    return {s, t};
  }
  s(0, 1) = s(1, 0) = 1.0;
  t(0, 1) = std::conj(a);
  t(1, 0) = a;
  return {s, t};
}

FactorizationCertificate conjugate_pair_two_factor(const ComplexMatrix& a, const Tolerance& tol) {
  detail::require_unitary(a, "A", tol);
  const auto m = a.rows();
  ComplexMatrix target = ComplexMatrix::Zero(2 * m, 2 * m);
  target.topLeftCorner(m, m) = a;
  target.bottomRightCorner(m, m) = a.adjoint();
  return make_certificate(std::move(target), {detail::block_swap(m), detail::block_flip(a)},
                          Method::conjugate_pair, tol);
}

FactorizationCertificate two_symmetry_factor(const ComplexMatrix& u, const Tolerance& tol) {
  detail::require_unitary(u, "U", tol);
  const auto sd = spectral_decompose(u, tol);
  const auto pairing = pair_conjugates(sd.eigenvalues, tol.cluster_tol);
  if (!pairing.closed) throw SpectrumNotConjSymmetric(pairing.unmatched, pairing.margin);

  detail::PairedDiagonal d;
  d.dim = u.rows();
  for (const auto& [up, lo] : pairing.pairs) {
    // Average the two members so the block is exactly diag(mu, conj mu).
    cplx mu = 0.5 * (sd.eigenvalues[static_cast<size_t>(up)] +
                     std::conj(sd.eigenvalues[static_cast<size_t>(lo)]));
    mu /= std::abs(mu);
    d.pairs.push_back({up, lo, mu});
  }
  for (auto j : pairing.self_paired) {
    d.singles.push_back({j, sd.eigenvalues[static_cast<size_t>(j)].real() > 0.0 ? 1.0 : -1.0});
  }
  const auto [s, t] = detail::factor_paired_diagonal(d, tol.unitary_tol);
  auto cert = make_certificate(u, {detail::conjugate_by(sd.basis, s), detail::conjugate_by(sd.basis, t)},
                               Method::two_symmetry, tol);
  if (!(cert.residual <= tol.verify_tol)) {
    throw ConvergenceFailure("two-symmetry product misses the target", cert.residual);
  }
  return cert;
}

ComplexMatrix intertwiner_to_symmetry(const ComplexMatrix& u, const ComplexMatrix& w,
                                      const Tolerance& tol) {
  detail::require_unitary(u, "U", tol);
  detail::require_unitary(w, "W", tol);
  if (u.rows() != w.rows()) throw Error(ErrorKind::ShapeMismatch, "U and W differ in size");
  const double gap = operator_norm(w.adjoint() * u * w - u.adjoint());
  if (gap > tol.verify_tol) {
    throw Error(ErrorKind::NotIntertwiner, "W^* U W differs from U^* by " + std::to_string(gap));
  }

  // W^2 commutes with U; take its square root exp(pi i H) with H in [0, 1).
  const auto sd = spectral_decompose(w * w, tol, Clustering::merge);
  std::vector<cplx> roots;
  roots.reserve(sd.eigenvalues.size());
  for (const cplx z : sd.eigenvalues) {
    const double h = z == cplx{1.0, 0.0} ? 0.0 : unit_angle(z) / (2.0 * kPi);
    roots.push_back(std::polar(1.0, kPi * h));
  }
  const ComplexMatrix v = detail::conjugate_by(sd.basis, diagonal(roots));
  ComplexMatrix s = v.adjoint() * w;
  s = 0.5 * (s + s.adjoint());

  const double defect = operator_norm(u * s - s * u.adjoint());
  if (!(defect <= tol.verify_tol) || !(involution_defect(s) <= tol.verify_tol)) {
    throw ConvergenceFailure("square root of W^2 does not yield a symmetry", defect);
  }
  return s;
}

FactorizationCertificate radjavi_four_factor(const ComplexMatrix& u, const Tolerance& tol) {
  detail::require_unitary(u, "U", tol);
  const cplx det = determinant(u);
  const double dist = distance_to_signs(det);
  if (dist > tol.verify_tol) throw DeterminantObstruction(det, dist);

  const auto sd = spectral_decompose(u, tol);
  const auto n = u.rows();
  const double sign = det.real() > 0.0 ? 1.0 : -1.0;

  // Spread the residual phase of the determinant evenly over the spectrum.
  std::vector<cplx> lambda = sd.eigenvalues;
  cplx prod{1.0, 0.0};
  for (const auto& z : lambda) prod *= z;
  const double phi = std::arg(prod / sign);
  for (auto& z : lambda) z *= std::polar(1.0, -phi / static_cast<double>(n));

  // prefix[k] = lambda_1 ... lambda_k (1-based k)
  std::vector<cplx> prefix(static_cast<size_t>(n) + 1, cplx{1.0, 0.0});
  for (Eigen::Index k = 1; k <= n; ++k) {
    prefix[static_cast<size_t>(k)] = prefix[static_cast<size_t>(k - 1)] * lambda[static_cast<size_t>(k - 1)];
  }

  // V = diag(P1, P1*, P3, P3*, ...[, det]),  W = diag(1, P2, P2*, P4, P4*, ...[, det]).
  detail::PairedDiagonal v{n, {}, {}};
  detail::PairedDiagonal w{n, {}, {}};
  for (Eigen::Index j = 0; j + 1 < n; j += 2) v.pairs.push_back({j, j + 1, prefix[static_cast<size_t>(j + 1)]});
  if (n % 2 == 1) v.singles.push_back({n - 1, sign});
  w.singles.push_back({0, 1.0});
  for (Eigen::Index j = 1; j + 1 < n; j += 2) w.pairs.push_back({j, j + 1, prefix[static_cast<size_t>(j + 1)]});
  if (n % 2 == 0) w.singles.push_back({n - 1, sign});

  const auto [s1, s2] = detail::factor_paired_diagonal(v, tol.unitary_tol);
  const auto [s3, s4] = detail::factor_paired_diagonal(w, tol.unitary_tol);
  const auto& q = sd.basis;
  auto cert = make_certificate(u,
                               {detail::conjugate_by(q, s1), detail::conjugate_by(q, s2),
                                detail::conjugate_by(q, s3), detail::conjugate_by(q, s4)},
                               Method::radjavi_four, tol);
  if (!(cert.residual <= tol.verify_tol)) {
    throw ConvergenceFailure("four-symmetry product misses the target", cert.residual);
  }
  return cert;
}

}  // namespace symfact
