#pragma once

#include "symfact/factor.hpp"
#include "symfact/matcore.hpp"

#include <array>
#include <climits>
#include <optional>
#include <string>
#include <variant>

namespace symfact {

enum class ObstructionKind { determinant, conj_spectrum, quadrant_arc, not_symmetry };

const char* to_string(ObstructionKind k);
std::optional<ObstructionKind> obstruction_kind_from_string(std::string_view s);

// excluded_length value for obstructions that rule out every finite length.
inline constexpr int kAllLengths = INT_MAX;

struct DeterminantEvidence {
  cplx det;
  double distance;  // dist(det, {+1, -1})
};

struct ConjSpectrumEvidence {
  cplx eigenvalue;  // left without a conjugate partner
  double margin;
};

struct QuadrantEvidence {
  int arc;        // k in 1..4
  double margin;  // dist(spectrum, {1, i, -1, -i})
};

struct NotSymmetryEvidence {
  double self_adjoint_defect;
  double involution_defect;
};

using ObstructionEvidence =
    std::variant<DeterminantEvidence, ConjSpectrumEvidence, QuadrantEvidence, NotSymmetryEvidence>;

// Checkable reason why no product of `excluded_length` (or fewer) symmetries
// equals `target`.
struct ObstructionCertificate {
  ObstructionKind kind;
  int excluded_length;
  ObstructionEvidence evidence;
  ComplexMatrix target;
  std::optional<std::string> base_point;  // set by field-level routines
};

// Fires iff dist(det U, {+1,-1}) > verify_tol. Throws NotUnitary.
std::optional<ObstructionCertificate> det_obstruction(const ComplexMatrix& u, const Tolerance& tol = {});

// Fires iff the spectrum is not closed under conjugation. Throws NotUnitary.
std::optional<ObstructionCertificate> conj_spectrum_obstruction(const ComplexMatrix& u,
                                                                const Tolerance& tol = {});

// Fires iff the whole spectrum sits in one open arc C_k with margin to the
// fourth roots of unity above verify_tol. Throws NotUnitary.
std::optional<ObstructionCertificate> quadrant_obstruction(const ComplexMatrix& u,
                                                           const Tolerance& tol = {});

// Fires iff U is not a symmetry (length 1 only).
std::optional<ObstructionCertificate> not_symmetry_obstruction(const ComplexMatrix& u,
                                                               const Tolerance& tol = {});

enum class Verdict { member, non_member, unknown };
const char* to_string(Verdict v);

struct LengthVerdict {
  int length = 0;
  Verdict verdict = Verdict::unknown;
  std::optional<FactorizationCertificate> certificate;  // member
  std::optional<ObstructionCertificate> obstruction;    // non_member
};

// Verdicts for S, S^2, S^3, S^4 (index 0..3).
struct MembershipReport {
  std::array<LengthVerdict, 4> lengths;
};

// Throws NotUnitary.
MembershipReport classify_membership(const ComplexMatrix& u, const Tolerance& tol = {});

}  // namespace symfact
