#include "symfact/certkit.hpp"

#include "symfact/errors.hpp"
#include "symfact/spectrum.hpp"

#include <cmath>

namespace symfact {

VerificationReport verify_certificate(const FactorizationCertificate& cert, const Tolerance& tol) {
  const auto n = cert.target.rows();
  if (n == 0 || cert.target.cols() != n) {
    throw Error(ErrorKind::ShapeMismatch, "target must be a non-empty square matrix");
  }
  if (cert.factors.empty()) throw Error(ErrorKind::ShapeMismatch, "certificate has no factors");
  for (const auto& f : cert.factors) {
    if (f.rows() != n || f.cols() != n) {
      throw Error(ErrorKind::ShapeMismatch, "factor size differs from target size");
    }
  }

  VerificationReport report;
  report.tol = tol;
  bool ok = cert.target.allFinite();
  for (const auto& f : cert.factors) {
    FactorDefects d;
    if (f.allFinite()) {
      d.self_adjoint = self_adjoint_defect(f);
      d.involution = involution_defect(f);
    } else {
      d.self_adjoint = d.involution = INFINITY;
    }
    ok = ok && d.self_adjoint <= tol.verify_tol && d.involution <= tol.verify_tol;
    report.factors.push_back(d);
  }
  const ComplexMatrix product = cert.product();
  report.residual = product.allFinite() ? operator_norm(product - cert.target) : INFINITY;
  report.pass = ok && report.residual <= tol.verify_tol;
  return report;
}

bool verify_obstruction(const ObstructionCertificate& obs, const Tolerance& tol) {
  if (obs.target.rows() == 0 || obs.target.rows() != obs.target.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "target must be a non-empty square matrix");
  }
  if (!is_unitary(obs.target, tol)) return false;
  // Evidence values must agree with a fresh computation to this precision.
  const double agree = std::max(tol.verify_tol, 1e-9);
  switch (obs.kind) {
    case ObstructionKind::determinant: {
      const auto fresh = det_obstruction(obs.target, tol);
      const auto* ev = std::get_if<DeterminantEvidence>(&obs.evidence);
      if (!fresh || !ev || obs.excluded_length != kAllLengths) return false;
      const auto& f = std::get<DeterminantEvidence>(fresh->evidence);
      return std::abs(ev->det - f.det) <= agree && std::abs(ev->distance - f.distance) <= agree;
    }
    case ObstructionKind::conj_spectrum: {
      const auto fresh = conj_spectrum_obstruction(obs.target, tol);
      const auto* ev = std::get_if<ConjSpectrumEvidence>(&obs.evidence);
      if (!fresh || !ev || obs.excluded_length != 2 || !(ev->margin > 0.0)) return false;
      // The claimed eigenvalue must be in the spectrum.
      const auto sd = spectral_decompose(obs.target, tol);
      for (const auto& z : sd.eigenvalues) {
        if (std::abs(z - ev->eigenvalue) <= agree) return true;
      }
      return false;
    }
    case ObstructionKind::quadrant_arc: {
      const auto fresh = quadrant_obstruction(obs.target, tol);
      const auto* ev = std::get_if<QuadrantEvidence>(&obs.evidence);
      if (!fresh || !ev || obs.excluded_length != 3) return false;
      const auto& f = std::get<QuadrantEvidence>(fresh->evidence);
      return f.arc == ev->arc && std::abs(f.margin - ev->margin) <= agree;
    }
    case ObstructionKind::not_symmetry: {
      return obs.excluded_length == 1 && not_symmetry_obstruction(obs.target, tol).has_value();
    }
  }
  return false;
}

double distance_lower_bound_s4(const ComplexMatrix& u, const Tolerance& tol) {
  require_square_finite(u, "U");
  const double defect = unitary_defect(u);
  if (defect > tol.unitary_tol) throw NotUnitary("U", defect);
  return distance_to_signs(determinant(u)) / static_cast<double>(u.rows());
}

}  // namespace symfact
