#pragma once

#include "symfact/matcore.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace symfact {

enum class Method {
  conjugate_pair,
  two_symmetry,
  radjavi_four,
  weyl_scalar,
  finite_spectrum_four,
  three_scalar,
  lemma_two_uni,
  lemma_four_sym,
  trivial,  // a symmetry (or product) padded with identity factors
};

const char* to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

// Ordered symmetries whose left-to-right product is the target.
struct FactorizationCertificate {
  ComplexMatrix target;
  std::vector<ComplexMatrix> factors;
  Method method = Method::trivial;
  double residual = 0.0;
  Tolerance tol;

  ComplexMatrix product() const { return ordered_product(factors, target.rows()); }
};

// Builds a certificate and records ||product - target||.
FactorizationCertificate make_certificate(ComplexMatrix target, std::vector<ComplexMatrix> factors,
                                          Method method, const Tolerance& tol);

// Appends identity factors until the certificate has `length` factors.
FactorizationCertificate pad_to_length(FactorizationCertificate cert, size_t length);

// Conjugates target and every factor by q: X -> q X q^*.
FactorizationCertificate conjugate_certificate(const FactorizationCertificate& cert,
                                               const ComplexMatrix& q);

// exp(2 pi i p/q) with 0 <= p < q and gcd(p, q) = 1.
class RationalAngle {
 public:
  RationalAngle(long long p, long long q);

  long long numerator() const { return p_; }
  long long denominator() const { return q_; }
  cplx value() const;

  // The same unit number written as exp(i pi p'/q') in lowest terms.
  long long pi_numerator() const;
  long long pi_denominator() const;

  // True for +1 and -1, which are symmetries on their own.
  bool is_sign() const { return q_ <= 2; }

  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;

 private:
  long long p_;
  long long q_;
};

struct SpectrumEntry {
  RationalAngle angle;
  int multiplicity;
};

// Prescribed eigenvalues (pairwise distinct) with multiplicities.
struct FiniteSpectrumSpec {
  std::vector<SpectrumEntry> entries;
  int dim() const;
};

// --- two-symmetry constructions --------------------------------------------

// diag(A, A^*) = [[0, I], [I, 0]] * [[0, A^*], [A, 0]].
FactorizationCertificate conjugate_pair_two_factor(const ComplexMatrix& a, const Tolerance& tol = {});

// Two symmetries S, T with S T = U when the spectrum of U is closed under
// conjugation. Throws NotUnitary, SpectrumNotConjSymmetric.
FactorizationCertificate two_symmetry_factor(const ComplexMatrix& u, const Tolerance& tol = {});

// Given W with W^* U W = U^*, returns the symmetry S = V^* W where V is the
// square root exp(pi i H) of W^2 = exp(2 pi i H). Then U S = S U^*.
// Throws NotUnitary, NotIntertwiner (kind), ConvergenceFailure.
ComplexMatrix intertwiner_to_symmetry(const ComplexMatrix& u, const ComplexMatrix& w,
                                      const Tolerance& tol = {});

// --- four-symmetry constructions -------------------------------------------

// U = V W with V, W diagonal in the eigenbasis of U, each a product of two
// symmetries. Requires det U = +-1 within verify_tol.
// Throws NotUnitary, DeterminantObstruction.
FactorizationCertificate radjavi_four_factor(const ComplexMatrix& u, const Tolerance& tol = {});

// Clock diag(1, w, ..., w^{n-1}), w = exp(2 pi i/n).
ComplexMatrix clock_matrix(int n);
// Cyclic shift e_j -> e_{j+1 mod n}; satisfies C S = w S C.
ComplexMatrix shift_matrix(int n);

// Four 2n x 2n symmetries with product exp(i pi k/n) I_{2n}, built from the
// Weyl pair (C^k, S).
FactorizationCertificate weyl_scalar_four_factor(long long k, int n, const Tolerance& tol = {});

// alpha I_dim as four symmetries: a direct sum of Weyl blocks of size 2q'.
// Throws MultiplicityConstraint.
FactorizationCertificate scalar_four_factor(const RationalAngle& alpha, int dim,
                                            const Tolerance& tol = {});

// Diagonal unitary with the prescribed spectrum as four symmetries.
// Throws MultiplicityConstraint, InvalidArgument (repeated angle).
FactorizationCertificate finite_spectrum_four_factor(const FiniteSpectrumSpec& spec,
                                                     const Tolerance& tol = {});

// Smallest-denominator q <= max_denominator with |z - exp(2 pi i p/q)| <= tol.
std::optional<RationalAngle> recognize_root_of_unity(cplx z, long long max_denominator, double tol);

// Factors a unitary matrix whose eigenvalues are roots of unity (order at
// most max_denominator): the spec is read off the clustered spectrum and the
// block factors are conjugated back into the eigenbasis.
// Throws NotUnitary, InvalidArgument (eigenvalue not a recognized root of
// unity), MultiplicityConstraint.
FactorizationCertificate finite_spectrum_four_factor(const ComplexMatrix& u, const Tolerance& tol = {},
                                                     long long max_denominator = 1024);

// --- three symmetries ------------------------------------------------------

// alpha I_dim for alpha in {1, i, -1, -i} and even dim.
// Throws NotFourthRoot, OddDimension (kinds).
FactorizationCertificate three_factor_scalar(cplx alpha, int dim, const Tolerance& tol = {});

// --- finite-dimensional lemma steps ----------------------------------------

struct TwoUnitaryStep {
  ComplexMatrix r1;
  ComplexMatrix r2;
  ComplexMatrix projection;  // E, rank dim/2
  ComplexMatrix vp;          // V', unitary, commutes with E
};

// U V = R1 R2 U (V' E + I - E). Throws OddDimension, NotUnitary.
TwoUnitaryStep lemma_two_uni_step(const ComplexMatrix& u, const ComplexMatrix& v,
                                  const Tolerance& tol = {});

struct FourSymmetryStep {
  std::vector<ComplexMatrix> symmetries;  // R1..R4
  ComplexMatrix e2;                       // rank dim/6, orthogonal to E1
  ComplexMatrix b2;                       // unitary on range(E2)
};

// U = R1 R2 R3 R4 (B1 + B2 + I - E1 - E2) for dim 3m, m even, with U
// commuting with E1 (rank 2m) and B1 unitary on range(E1).
// Throws DimensionNotDivisible, RankMismatch, NotCommuting, NotUnitary.
FourSymmetryStep lemma_four_sym_step(const ComplexMatrix& u, const ComplexMatrix& e1,
                                     const ComplexMatrix& b1, const Tolerance& tol = {});

// The 2x2 factors of diag(a, conj(a)) for unit a: (swap, [[0, conj a], [a, 0]]),
// or (a I, I) when a is +-1 within unitary_tol.
std::pair<ComplexMatrix, ComplexMatrix> conjugate_pair_block(cplx a, double snap_tol);

}  // namespace symfact
