#pragma once

#include "symfact/factor.hpp"
#include "symfact/obstruct.hpp"

#include <vector>

namespace symfact {

struct FactorDefects {
  double self_adjoint = 0.0;  // ||R - R^*||
  double involution = 0.0;    // ||R^2 - I||
};

struct VerificationReport {
  std::vector<FactorDefects> factors;
  double residual = 0.0;  // ||product - target||, recomputed
  bool pass = false;
  Tolerance tol;
};

// Recomputes every defect from the matrices; the stored residual is ignored.
// Throws ShapeMismatch.
VerificationReport verify_certificate(const FactorizationCertificate& cert, const Tolerance& tol = {});

// Re-derives the obstruction from its target and checks that the evidence
// matches. Throws ShapeMismatch on a malformed target.
bool verify_obstruction(const ObstructionCertificate& obs, const Tolerance& tol = {});

// Lower bound on the operator-norm distance from U to any product of
// symmetries in M_n: |det U - det V| <= n ||U - V|| for unitaries, and every
// such product has det +-1. Throws NotUnitary.
double distance_lower_bound_s4(const ComplexMatrix& u, const Tolerance& tol = {});

}  // namespace symfact
