#pragma once

#include "symfact/matcore.hpp"
#include "symfact/obstruct.hpp"

#include <array>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace symfact {

// A matrix-valued function on a finite base space: the algebra C(X; M_n)
// for a finite discrete X.
struct MatrixField {
  std::vector<std::string> points;
  int fiber_dim = 0;
  std::map<std::string, ComplexMatrix> values;

  // Throws InvalidArgument: duplicate/missing labels or fibers of the wrong size.
  void validate() const;

  const ComplexMatrix& at(const std::string& point) const { return values.at(point); }

  bool is_unitary(const Tolerance& tol = {}) const;
  bool is_symmetry(const Tolerance& tol = {}) const;

  MatrixField adjoint() const;
};

// Pointwise product f g. Throws ShapeMismatch.
MatrixField field_product(const MatrixField& f, const MatrixField& g);

// Constant field x -> m over the given points.
MatrixField constant_field(const std::vector<std::string>& points, const ComplexMatrix& m);

// Center-valued determinant x -> det f(x).
std::map<std::string, cplx> det_c(const MatrixField& f);

// For unitary fields f, g: det_c(fg) = det_c(f) det_c(g) and
// det_c(f^*) = conj det_c(f) pointwise within 1e-9. A fiber that is not
// unitary within tol.unitary_tol makes the check fail. Throws ShapeMismatch.
bool detc_properties_check(const MatrixField& f, const MatrixField& g, const Tolerance& tol = {});

// One determinant obstruction per offending base point.
struct FieldObstruction {
  std::vector<ObstructionCertificate> per_point;
};

using FieldFactorization = std::variant<std::array<MatrixField, 4>, FieldObstruction>;

// Fiberwise four-symmetry factorization when det_c(f) is a central symmetry.
// Throws NotUnitary.
FieldFactorization field_four_factor(const MatrixField& f, const Tolerance& tol = {});

}  // namespace symfact
