#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace symfact {

using cplx = std::complex<double>;

// Dense square complex matrix; every construction in the library is expressed
// in terms of it. Squareness and finiteness are checked at API boundaries
// with require_square_finite().
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

struct Tolerance {
  double unitary_tol = 1e-10;
  double verify_tol = 1e-8;
  double cluster_tol = 1e-9;

  // Throws InvalidArgument on a negative or non-finite entry.
  void validate() const;
};

// Orthonormal eigenbasis of a unitary together with unit-modulus eigenvalues
// sorted by principal argument in [0, 2pi). Column j of `basis` belongs to
// eigenvalues[j].
struct SpectralDecomposition {
  ComplexMatrix basis;
  std::vector<cplx> eigenvalues;

  Eigen::Index dim() const { return basis.rows(); }
  // basis * diag(eigenvalues) * basis^*
  ComplexMatrix reconstruct() const;
};

enum class Clustering { none, merge };

enum class DetMode { free, plus_one, minus_one };

// --- construction helpers --------------------------------------------------

ComplexMatrix identity(Eigen::Index n);
ComplexMatrix diagonal(std::span<const cplx> entries);
// Block diagonal matrix with the given blocks in order.
ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks);
// Ordered product M_0 M_1 ... M_{k-1}; the identity of size `dim` when empty.
ComplexMatrix ordered_product(std::span<const ComplexMatrix> factors, Eigen::Index dim);

// Throws InvalidArgument unless A is non-empty, square and has finite entries.
void require_square_finite(const ComplexMatrix& a, const char* name);

// --- predicates and norms --------------------------------------------------

ComplexMatrix adjoint(const ComplexMatrix& a);

// Largest singular value, from the Hermitian eigenproblem of A^* A.
double operator_norm(const ComplexMatrix& a);

// Spectral norm of a Hermitian matrix (largest absolute eigenvalue).
double hermitian_norm(const ComplexMatrix& h);

double self_adjoint_defect(const ComplexMatrix& a);  // ||A - A^*||
double involution_defect(const ComplexMatrix& a);    // ||A^2 - I||
double unitary_defect(const ComplexMatrix& a);       // ||A^*A - I||

bool is_symmetry(const ComplexMatrix& a, const Tolerance& tol = {});
bool is_unitary(const ComplexMatrix& a, const Tolerance& tol = {});
// Orthogonal projection: self-adjoint and idempotent within unitary_tol.
bool is_projection(const ComplexMatrix& a, const Tolerance& tol = {});

// Determinant from a partially pivoted LU factorization. Unitary input is
// renormalized onto the unit circle.
cplx determinant(const ComplexMatrix& a);

// Distance from z to the set {+1, -1}.
double distance_to_signs(cplx z);

// Principal argument mapped to [0, 2pi).
double unit_angle(cplx z);

// --- spectral decomposition ------------------------------------------------

// Complex Schur based eigendecomposition of a unitary. With Clustering::merge,
// eigenvalues that chain together within cluster_tol are replaced by their
// common normalized mean (and snapped to exactly +1/-1 when that close).
// Throws NotUnitary, ConvergenceFailure.
SpectralDecomposition spectral_decompose(const ComplexMatrix& u, const Tolerance& tol = {},
                                         Clustering clustering = Clustering::none);

// Group of (numerically) equal eigenvalues of a decomposition.
struct EigenCluster {
  cplx value;
  std::vector<Eigen::Index> members;  // column indices into the basis
};

// Circular single-linkage clustering of the (sorted) eigenvalues.
std::vector<EigenCluster> cluster_eigenvalues(std::span<const cplx> sorted_eigenvalues,
                                              double cluster_tol);

// --- random instances ------------------------------------------------------

// Haar distributed unitary: QR of a seeded complex Ginibre matrix with the
// triangular factor's diagonal made real positive. For det_mode != free the
// first column is rotated so that det is exactly +1 or -1.
ComplexMatrix haar_random_unitary(Eigen::Index dim, std::uint64_t seed,
                                  DetMode det_mode = DetMode::free);

}  // namespace symfact
