#include "symfact/centerfun.hpp"

#include "symfact/errors.hpp"

#include <cmath>
#include <set>

namespace symfact {

void MatrixField::validate() const {
  if (fiber_dim < 1) throw Error(ErrorKind::InvalidArgument, "fiber_dim must be positive");
  std::set<std::string> seen;
  for (const auto& p : points) {
    if (!seen.insert(p).second) throw Error(ErrorKind::InvalidArgument, "duplicate base point " + p);
    const auto it = values.find(p);
    if (it == values.end()) throw Error(ErrorKind::InvalidArgument, "no fiber at base point " + p);
    if (it->second.rows() != fiber_dim || it->second.cols() != fiber_dim) {
      throw Error(ErrorKind::InvalidArgument, "fiber at " + p + " has the wrong size");
    }
    require_square_finite(it->second, "fiber");
  }
  if (values.size() != points.size()) {
    throw Error(ErrorKind::InvalidArgument, "fibers given for unknown base points");
  }
}

bool MatrixField::is_unitary(const Tolerance& tol) const {
  for (const auto& p : points) {
    if (!symfact::is_unitary(at(p), tol)) return false;
  }
  return true;
}

bool MatrixField::is_symmetry(const Tolerance& tol) const {
  for (const auto& p : points) {
    if (!symfact::is_symmetry(at(p), tol)) return false;
  }
  return true;
}

MatrixField MatrixField::adjoint() const {
  MatrixField out{points, fiber_dim, {}};
  for (const auto& p : points) out.values[p] = at(p).adjoint();
  return out;
}

namespace {

void require_same_shape(const MatrixField& f, const MatrixField& g) {
  if (f.points != g.points || f.fiber_dim != g.fiber_dim) {
    throw Error(ErrorKind::ShapeMismatch, "fields differ in base points or fiber size");
  }
}

}  // namespace

MatrixField field_product(const MatrixField& f, const MatrixField& g) {
  require_same_shape(f, g);
  MatrixField out{f.points, f.fiber_dim, {}};
  for (const auto& p : f.points) out.values[p] = f.at(p) * g.at(p);
  return out;
}

MatrixField constant_field(const std::vector<std::string>& points, const ComplexMatrix& m) {
  MatrixField out{points, static_cast<int>(m.rows()), {}};
  for (const auto& p : points) out.values[p] = m;
  return out;
}

std::map<std::string, cplx> det_c(const MatrixField& f) {
  f.validate();
  std::map<std::string, cplx> out;
  for (const auto& p : f.points) out[p] = determinant(f.at(p));
  return out;
}

bool detc_properties_check(const MatrixField& f, const MatrixField& g, const Tolerance& tol) {
  require_same_shape(f, g);
  f.validate();
  g.validate();
  // The identities are checked as properties of det_c on the unitary group,
  // where it takes values in the unitary group of the center.
  if (!f.is_unitary(tol) || !g.is_unitary(tol)) return false;
  constexpr double kTol = 1e-9;
  const auto df = det_c(f);
  const auto dg = det_c(g);
  const auto dfg = det_c(field_product(f, g));
  const auto dfa = det_c(f.adjoint());
  for (const auto& p : f.points) {
    if (std::abs(dfg.at(p) - df.at(p) * dg.at(p)) > kTol) return false;
    if (std::abs(dfa.at(p) - std::conj(df.at(p))) > kTol) return false;
  }
  return true;
}

FieldFactorization field_four_factor(const MatrixField& f, const Tolerance& tol) {
  f.validate();
  for (const auto& p : f.points) {
    const double defect = unitary_defect(f.at(p));
    if (defect > tol.unitary_tol) throw NotUnitary("fiber at " + p, defect);
  }

  FieldObstruction obstruction;
  for (const auto& p : f.points) {
    if (auto obs = det_obstruction(f.at(p), tol)) {
      obs->base_point = p;
      obstruction.per_point.push_back(std::move(*obs));
    }
  }
  if (!obstruction.per_point.empty()) return obstruction;

  std::array<MatrixField, 4> factors;
  for (auto& r : factors) r = MatrixField{f.points, f.fiber_dim, {}};
  for (const auto& p : f.points) {
    auto cert = radjavi_four_factor(f.at(p), tol);
    for (size_t j = 0; j < 4; ++j) factors[j].values[p] = std::move(cert.factors[j]);
  }
  return factors;
}

}  // namespace symfact
