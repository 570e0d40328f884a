#include "symfact/matcore.hpp"

#include "symfact/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace symfact {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::SpectrumNotConjSymmetric: return "SpectrumNotConjSymmetric";
    case ErrorKind::NotIntertwiner: return "NotIntertwiner";
    case ErrorKind::DeterminantObstruction: return "DeterminantObstruction";
    case ErrorKind::MultiplicityConstraint: return "MultiplicityConstraint";
    case ErrorKind::NotFourthRoot: return "NotFourthRoot";
    case ErrorKind::OddDimension: return "OddDimension";
    case ErrorKind::DimensionNotDivisible: return "DimensionNotDivisible";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

void Tolerance::validate() const {
  for (double v : {unitary_tol, verify_tol, cluster_tol}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "tolerances must be finite and non-negative");
    }
  }
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(eigenvalues.size()));
  for (Eigen::Index j = 0; j < d.size(); ++j) d(j) = eigenvalues[static_cast<size_t>(j)];
  return basis * d.asDiagonal() * basis.adjoint();
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix diagonal(std::span<const cplx> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) d(j, j) = entries[static_cast<size_t>(j)];
  return d;
}

ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    out.block(offset, offset, b.rows(), b.cols()) = b;
    offset += b.rows();
  }
  return out;
}

ComplexMatrix ordered_product(std::span<const ComplexMatrix> factors, Eigen::Index dim) {
  ComplexMatrix p = identity(dim);
  for (const auto& f : factors) p = p * f;
  return p;
}

void require_square_finite(const ComplexMatrix& a, const char* name) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be a non-empty square matrix");
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " has non-finite entries");
  }
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

double hermitian_norm(const ComplexMatrix& h) {
  if (h.size() == 0) return 0.0;
  // Symmetrize so tiny rounding asymmetry does not leak into the solver.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  // Scaling keeps A^*A away from overflow/underflow.
  const ComplexMatrix b = a / scale;
  const double top = hermitian_norm(b.adjoint() * b);
  return scale * std::sqrt(std::max(top, 0.0));
}

double self_adjoint_defect(const ComplexMatrix& a) { return operator_norm(a - a.adjoint()); }

double involution_defect(const ComplexMatrix& a) {
  return operator_norm(a * a - identity(a.rows()));
}

double unitary_defect(const ComplexMatrix& a) {
  return hermitian_norm(a.adjoint() * a - identity(a.rows()));
}

bool is_symmetry(const ComplexMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols() || a.size() == 0 || !a.allFinite()) return false;
  return self_adjoint_defect(a) <= tol.unitary_tol && involution_defect(a) <= tol.unitary_tol;
}

bool is_unitary(const ComplexMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols() || a.size() == 0 || !a.allFinite()) return false;
  return unitary_defect(a) <= tol.unitary_tol;
}

bool is_projection(const ComplexMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols() || a.size() == 0 || !a.allFinite()) return false;
  return self_adjoint_defect(a) <= tol.unitary_tol && operator_norm(a * a - a) <= tol.unitary_tol;
}

cplx determinant(const ComplexMatrix& a) {
  if (a.size() == 0) return {1.0, 0.0};
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  cplx d = lu.determinant();
  if (is_unitary(a) && std::abs(d) > 0.0) d /= std::abs(d);
  return d;
}

double distance_to_signs(cplx z) {
  return std::min(std::abs(z - cplx{1.0, 0.0}), std::abs(z + cplx{1.0, 0.0}));
}

double unit_angle(cplx z) {
  double t = std::arg(z);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t = 0.0;
  return t;
}

namespace {

// Rotate the column so its first largest-modulus entry is real positive.
void fix_column_phase(Eigen::Ref<Eigen::VectorXcd> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_abs * (1.0 + 1e-12)) {
      best_abs = m;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::conj(v(best)) / best_abs;
}

bool lexicographic_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

void sort_decomposition(SpectralDecomposition& sd) {
  const auto n = sd.basis.cols();
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> angles(static_cast<size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) angles[static_cast<size_t>(j)] = unit_angle(sd.eigenvalues[static_cast<size_t>(j)]);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ta = angles[static_cast<size_t>(a)];
    const double tb = angles[static_cast<size_t>(b)];
    if (ta != tb) return ta < tb;
    // Descending, so that the standard basis keeps its natural order.
    return lexicographic_less(sd.basis.col(b), sd.basis.col(a));
  });
  SpectralDecomposition sorted;
  sorted.basis.resize(sd.basis.rows(), n);
  sorted.eigenvalues.resize(static_cast<size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto src = order[static_cast<size_t>(j)];
    sorted.basis.col(j) = sd.basis.col(src);
    sorted.eigenvalues[static_cast<size_t>(j)] = sd.eigenvalues[static_cast<size_t>(src)];
  }
  sd = std::move(sorted);
}

}  // namespace

std::vector<EigenCluster> cluster_eigenvalues(std::span<const cplx> sorted_eigenvalues,
                                              double cluster_tol) {
  std::vector<EigenCluster> clusters;
  const auto n = static_cast<Eigen::Index>(sorted_eigenvalues.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx z = sorted_eigenvalues[static_cast<size_t>(j)];
    if (!clusters.empty() &&
        std::abs(z - sorted_eigenvalues[static_cast<size_t>(clusters.back().members.back())]) <= cluster_tol) {
      clusters.back().members.push_back(j);
    } else {
      clusters.push_back({z, {j}});
    }
  }
  // The circle wraps: the last cluster may continue into the first.
  if (clusters.size() > 1) {
    const cplx first = sorted_eigenvalues[static_cast<size_t>(clusters.front().members.front())];
    const cplx last = sorted_eigenvalues[static_cast<size_t>(clusters.back().members.back())];
    if (std::abs(first - last) <= cluster_tol) {
      auto& front = clusters.front().members;
      front.insert(front.end(), clusters.back().members.begin(), clusters.back().members.end());
      clusters.pop_back();
    }
  }
  for (auto& c : clusters) {
    cplx sum{0.0, 0.0};
    for (auto m : c.members) sum += sorted_eigenvalues[static_cast<size_t>(m)];
    c.value = std::abs(sum) > 0.0 ? sum / std::abs(sum) : sorted_eigenvalues[static_cast<size_t>(c.members.front())];
  }
  return clusters;
}

SpectralDecomposition spectral_decompose(const ComplexMatrix& u, const Tolerance& tol,
                                         Clustering clustering) {
  require_square_finite(u, "U");
  const double defect = unitary_defect(u);
  if (defect > tol.unitary_tol) throw NotUnitary("U", defect);

  const auto n = u.rows();
  Eigen::ComplexSchur<ComplexMatrix> schur(u, true);
  if (schur.info() != Eigen::Success) {
    throw ConvergenceFailure("complex Schur iteration did not converge", INFINITY);
  }

  SpectralDecomposition sd;
  sd.basis = schur.matrixU();
  sd.eigenvalues.resize(static_cast<size_t>(n));
  const auto& t = schur.matrixT();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx z = t(j, j);
    sd.eigenvalues[static_cast<size_t>(j)] = std::abs(z) > 0.0 ? z / std::abs(z) : cplx{1.0, 0.0};
    fix_column_phase(sd.basis.col(j));
  }
  sort_decomposition(sd);

  if (clustering == Clustering::merge) {
    for (const auto& c : cluster_eigenvalues(sd.eigenvalues, tol.cluster_tol)) {
      cplx v = c.value;
      if (std::abs(v - 1.0) <= tol.cluster_tol) v = 1.0;
      if (std::abs(v + 1.0) <= tol.cluster_tol) v = -1.0;
      for (auto m : c.members) sd.eigenvalues[static_cast<size_t>(m)] = v;
    }
    sort_decomposition(sd);
  }

  Eigen::VectorXcd d(n);
  for (Eigen::Index j = 0; j < n; ++j) d(j) = sd.eigenvalues[static_cast<size_t>(j)];
  const double residual = operator_norm(u * sd.basis - sd.basis * d.asDiagonal());
  if (!(residual <= tol.verify_tol)) {
    throw ConvergenceFailure("eigendecomposition residual exceeds verify_tol", residual);
  }
  return sd;
}

ComplexMatrix haar_random_unitary(Eigen::Index dim, std::uint64_t seed, DetMode det_mode) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  // Fill row-major so the stream order is easy to describe.
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = cplx(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * identity(dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const cplx rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  if (det_mode != DetMode::free) {
    const cplx target = det_mode == DetMode::plus_one ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    cplx d = Eigen::PartialPivLU<ComplexMatrix>(q).determinant();
    d /= std::abs(d);
    q.col(0) *= target / d;
  }
  return q;
}

}  // namespace symfact
