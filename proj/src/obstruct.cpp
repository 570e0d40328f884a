#include "symfact/obstruct.hpp"

#include "symfact/errors.hpp"
#include "symfact/spectrum.hpp"

#include <cmath>

namespace symfact {

const char* to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::determinant: return "determinant";
    case ObstructionKind::conj_spectrum: return "conj_spectrum";
    case ObstructionKind::quadrant_arc: return "quadrant_arc";
    case ObstructionKind::not_symmetry: return "not_symmetry";
  }
  return "unknown";
}

std::optional<ObstructionKind> obstruction_kind_from_string(std::string_view s) {
  for (auto k : {ObstructionKind::determinant, ObstructionKind::conj_spectrum,
                 ObstructionKind::quadrant_arc, ObstructionKind::not_symmetry}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::member: return "member";
    case Verdict::non_member: return "non_member";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

void require_unitary(const ComplexMatrix& u, const Tolerance& tol) {
  require_square_finite(u, "U");
  const double defect = unitary_defect(u);
  if (defect > tol.unitary_tol) throw NotUnitary("U", defect);
}

}  // namespace

std::optional<ObstructionCertificate> det_obstruction(const ComplexMatrix& u, const Tolerance& tol) {
  require_unitary(u, tol);
  const cplx det = determinant(u);
  const double dist = distance_to_signs(det);
  if (!(dist > tol.verify_tol)) return std::nullopt;
  return ObstructionCertificate{ObstructionKind::determinant, kAllLengths,
                                DeterminantEvidence{det, dist}, u, std::nullopt};
}

std::optional<ObstructionCertificate> conj_spectrum_obstruction(const ComplexMatrix& u,
                                                                const Tolerance& tol) {
  require_unitary(u, tol);
  const auto sd = spectral_decompose(u, tol);
  const auto pairing = pair_conjugates(sd.eigenvalues, tol.cluster_tol);
  if (pairing.closed) return std::nullopt;
  return ObstructionCertificate{ObstructionKind::conj_spectrum, 2,
                                ConjSpectrumEvidence{pairing.unmatched, pairing.margin}, u,
                                std::nullopt};
}

std::optional<ObstructionCertificate> quadrant_obstruction(const ComplexMatrix& u,
                                                           const Tolerance& tol) {
  require_unitary(u, tol);
  const auto sd = spectral_decompose(u, tol);
  const auto arc = common_arc(sd.eigenvalues);
  if (!arc || !(arc->margin > tol.verify_tol)) return std::nullopt;
  return ObstructionCertificate{ObstructionKind::quadrant_arc, 3,
                                QuadrantEvidence{arc->arc, arc->margin}, u, std::nullopt};
}

std::optional<ObstructionCertificate> not_symmetry_obstruction(const ComplexMatrix& u,
                                                               const Tolerance& tol) {
  require_unitary(u, tol);
  const double sa = self_adjoint_defect(u);
  const double inv = involution_defect(u);
  if (sa <= tol.unitary_tol && inv <= tol.unitary_tol) return std::nullopt;
  return ObstructionCertificate{ObstructionKind::not_symmetry, 1, NotSymmetryEvidence{sa, inv}, u,
                                std::nullopt};
}

namespace {

LengthVerdict member(int length, FactorizationCertificate cert) {
  LengthVerdict v;
  v.length = length;
  v.verdict = Verdict::member;
  v.certificate = pad_to_length(std::move(cert), static_cast<size_t>(length));
  return v;
}

LengthVerdict non_member(int length, ObstructionCertificate obs) {
  LengthVerdict v;
  v.length = length;
  v.verdict = Verdict::non_member;
  v.obstruction = std::move(obs);
  return v;
}

LengthVerdict unknown(int length) {
  LengthVerdict v;
  v.length = length;
  return v;
}

bool is_scalar(const ComplexMatrix& u, cplx alpha, double tol) {
  return operator_norm(u - alpha * identity(u.rows())) <= tol;
}

}  // namespace

MembershipReport classify_membership(const ComplexMatrix& u, const Tolerance& tol) {
  require_unitary(u, tol);
  const auto det_obs = det_obstruction(u, tol);
  const auto conj_obs = conj_spectrum_obstruction(u, tol);
  const auto quad_obs = quadrant_obstruction(u, tol);

  MembershipReport report;
  auto& l1 = report.lengths[0];
  auto& l2 = report.lengths[1];
  auto& l3 = report.lengths[2];
  auto& l4 = report.lengths[3];

  // Length 1: U itself must be a symmetry.
  if (is_symmetry(u, tol)) {
    l1 = member(1, make_certificate(u, {u}, Method::trivial, tol));
  } else if (det_obs) {
    l1 = non_member(1, *det_obs);
  } else if (quad_obs) {
    l1 = non_member(1, *quad_obs);
  } else if (conj_obs) {
    l1 = non_member(1, *conj_obs);
  } else {
    l1 = non_member(1, *not_symmetry_obstruction(u, tol));
  }

  // Length 2: construction or conjugation-closure failure.
  if (l1.verdict == Verdict::member) {
    l2 = member(2, *l1.certificate);
  } else {
    try {
      l2 = member(2, two_symmetry_factor(u, tol));
    } catch (const SpectrumNotConjSymmetric&) {
      if (conj_obs) l2 = non_member(2, *conj_obs);
      else if (det_obs) l2 = non_member(2, *det_obs);
      else if (quad_obs) l2 = non_member(2, *quad_obs);
      else l2 = unknown(2);
    } catch (const ConvergenceFailure&) {
      l2 = unknown(2);
    }
  }

  // Length 3: only partially decidable.
  if (l2.verdict == Verdict::member) {
    l3 = member(3, *l2.certificate);
  } else if (quad_obs) {
    l3 = non_member(3, *quad_obs);
  } else if (det_obs) {
    l3 = non_member(3, *det_obs);
  } else if (u.rows() % 2 == 0 && (is_scalar(u, kI, tol.verify_tol) || is_scalar(u, -kI, tol.verify_tol))) {
    const cplx alpha = is_scalar(u, kI, tol.verify_tol) ? kI : -kI;
    auto cert = three_factor_scalar(alpha, static_cast<int>(u.rows()), tol);
    l3 = member(3, make_certificate(u, cert.factors, Method::three_scalar, tol));
  } else {
    l3 = unknown(3);
  }

  // Length 4: determinant decides.
  if (l3.verdict == Verdict::member) {
    l4 = member(4, *l3.certificate);
  } else if (det_obs) {
    l4 = non_member(4, *det_obs);
  } else {
    try {
      l4 = member(4, radjavi_four_factor(u, tol));
    } catch (const Error&) {
      l4 = unknown(4);
    }
  }
  return report;
}

}  // namespace symfact
