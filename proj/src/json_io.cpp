#include "symfact/json_io.hpp"

#include "symfact/errors.hpp"

#include <cmath>

namespace symfact {

namespace {

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "number is not finite");
  return v;
}

long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<long long>();
}

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [re, im]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

// Non-finite diagnostics (e.g. an infinite residual) are written as null.
Json real_to_json(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  const long long rows = integer(member(j, "rows", path), path + ".rows");
  const long long cols = integer(member(j, "cols", path), path + ".cols");
  if (rows < 1 || rows != cols) throw SchemaError(path, "matrix must be square and non-empty");
  const Json& data = member(j, "data", path);
  if (!data.is_array() || static_cast<long long>(data.size()) != rows * cols) {
    throw SchemaError(path + ".data", "expected rows*cols entries");
  }
  ComplexMatrix m(rows, cols);
  for (long long k = 0; k < rows * cols; ++k) {
    m(k / cols, k % cols) =
        complex_from_json(data[static_cast<size_t>(k)], path + ".data[" + std::to_string(k) + "]");
  }
  return m;
}

Json tolerance_to_json(const Tolerance& tol) {
  return Json{{"unitary_tol", tol.unitary_tol}, {"verify_tol", tol.verify_tol},
              {"cluster_tol", tol.cluster_tol}};
}

Tolerance tolerance_from_json(const Json& j, const std::string& path) {
  Tolerance tol;
  tol.unitary_tol = number(member(j, "unitary_tol", path), path + ".unitary_tol");
  tol.verify_tol = number(member(j, "verify_tol", path), path + ".verify_tol");
  tol.cluster_tol = number(member(j, "cluster_tol", path), path + ".cluster_tol");
  if (tol.unitary_tol < 0 || tol.verify_tol < 0 || tol.cluster_tol < 0) {
    throw SchemaError(path, "tolerances must be non-negative");
  }
  return tol;
}

Json certificate_to_json(const FactorizationCertificate& cert) {
  Json factors = Json::array();
  for (const auto& f : cert.factors) factors.push_back(matrix_to_json(f));
  return Json{{"target", matrix_to_json(cert.target)},
              {"factors", std::move(factors)},
              {"method", to_string(cert.method)},
              {"residual", real_to_json(cert.residual)},
              {"tol", tolerance_to_json(cert.tol)}};
}

FactorizationCertificate certificate_from_json(const Json& j, const std::string& path) {
  FactorizationCertificate cert;
  cert.target = matrix_from_json(member(j, "target", path), path + ".target");
  const Json& factors = member(j, "factors", path);
  if (!factors.is_array() || factors.empty()) {
    throw SchemaError(path + ".factors", "expected a non-empty array");
  }
  for (size_t k = 0; k < factors.size(); ++k) {
    const std::string p = path + ".factors[" + std::to_string(k) + "]";
    cert.factors.push_back(matrix_from_json(factors[k], p));
    if (cert.factors.back().rows() != cert.target.rows()) {
      throw SchemaError(p, "factor size differs from target size");
    }
  }
  const Json& method = member(j, "method", path);
  if (!method.is_string()) throw SchemaError(path + ".method", "expected a string");
  const auto m = method_from_string(method.get<std::string>());
  if (!m) throw SchemaError(path + ".method", "unknown method " + method.get<std::string>());
  cert.method = *m;
  cert.residual = number(member(j, "residual", path), path + ".residual");
  cert.tol = tolerance_from_json(member(j, "tol", path), path + ".tol");
  return cert;
}

Json obstruction_to_json(const ObstructionCertificate& obs) {
  Json evidence = std::visit(
      [](const auto& ev) -> Json {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, DeterminantEvidence>) {
          return Json{{"det", complex_to_json(ev.det)}, {"distance", ev.distance}};
        } else if constexpr (std::is_same_v<T, ConjSpectrumEvidence>) {
          return Json{{"eigenvalue", complex_to_json(ev.eigenvalue)}, {"margin", ev.margin}};
        } else if constexpr (std::is_same_v<T, QuadrantEvidence>) {
          return Json{{"arc", ev.arc}, {"margin", ev.margin}};
        } else {
          return Json{{"self_adjoint_defect", ev.self_adjoint_defect},
                      {"involution_defect", ev.involution_defect}};
        }
      },
      obs.evidence);
  Json j{{"kind", to_string(obs.kind)},
         {"target", matrix_to_json(obs.target)},
         {"excluded_length", obs.excluded_length == kAllLengths ? Json("all") : Json(obs.excluded_length)},
         {"evidence", std::move(evidence)}};
  if (obs.base_point) j["base_point"] = *obs.base_point;
  return j;
}

ObstructionCertificate obstruction_from_json(const Json& j, const std::string& path) {
  const Json& kind = member(j, "kind", path);
  if (!kind.is_string()) throw SchemaError(path + ".kind", "expected a string");
  const auto k = obstruction_kind_from_string(kind.get<std::string>());
  if (!k) throw SchemaError(path + ".kind", "unknown obstruction kind");

  ObstructionCertificate obs{*k, 0, DeterminantEvidence{}, {}, std::nullopt};
  obs.target = matrix_from_json(member(j, "target", path), path + ".target");
  const Json& len = member(j, "excluded_length", path);
  if (len.is_string() && len.get<std::string>() == "all") {
    obs.excluded_length = kAllLengths;
  } else {
    obs.excluded_length = static_cast<int>(integer(len, path + ".excluded_length"));
    if (obs.excluded_length < 1) throw SchemaError(path + ".excluded_length", "must be positive");
  }
  const std::string ep = path + ".evidence";
  const Json& ev = member(j, "evidence", path);
  switch (*k) {
    case ObstructionKind::determinant:
      obs.evidence = DeterminantEvidence{complex_from_json(member(ev, "det", ep), ep + ".det"),
                                         number(member(ev, "distance", ep), ep + ".distance")};
      break;
    case ObstructionKind::conj_spectrum:
      obs.evidence =
          ConjSpectrumEvidence{complex_from_json(member(ev, "eigenvalue", ep), ep + ".eigenvalue"),
                               number(member(ev, "margin", ep), ep + ".margin")};
      break;
    case ObstructionKind::quadrant_arc: {
      const auto arc = integer(member(ev, "arc", ep), ep + ".arc");
      if (arc < 1 || arc > 4) throw SchemaError(ep + ".arc", "arc must be in 1..4");
      obs.evidence = QuadrantEvidence{static_cast<int>(arc), number(member(ev, "margin", ep), ep + ".margin")};
      break;
    }
    case ObstructionKind::not_symmetry:
      obs.evidence = NotSymmetryEvidence{
          number(member(ev, "self_adjoint_defect", ep), ep + ".self_adjoint_defect"),
          number(member(ev, "involution_defect", ep), ep + ".involution_defect")};
      break;
  }
  if (const auto it = j.find("base_point"); it != j.end()) {
    if (!it->is_string()) throw SchemaError(path + ".base_point", "expected a string");
    obs.base_point = it->get<std::string>();
  }
  return obs;
}

Json report_to_json(const VerificationReport& report) {
  Json factors = Json::array();
  for (const auto& d : report.factors) {
    factors.push_back(Json{{"self_adjoint_defect", real_to_json(d.self_adjoint)},
                           {"involution_defect", real_to_json(d.involution)}});
  }
  return Json{{"pass", report.pass},
              {"residual", real_to_json(report.residual)},
              {"factors", std::move(factors)},
              {"tol", tolerance_to_json(report.tol)}};
}

Json membership_to_json(const MembershipReport& report) {
  Json lengths = Json::array();
  for (const auto& l : report.lengths) {
    Json entry{{"length", l.length}, {"verdict", to_string(l.verdict)}};
    if (l.certificate) entry["certificate"] = certificate_to_json(*l.certificate);
    if (l.obstruction) entry["obstruction"] = obstruction_to_json(*l.obstruction);
    lengths.push_back(std::move(entry));
  }
  return Json{{"kind", "membership"}, {"lengths", std::move(lengths)}};
}

Json field_to_json(const MatrixField& f) {
  Json values = Json::object();
  for (const auto& p : f.points) values[p] = matrix_to_json(f.at(p));
  return Json{{"points", f.points}, {"fiber_dim", f.fiber_dim}, {"values", std::move(values)}};
}

MatrixField field_from_json(const Json& j, const std::string& path) {
  MatrixField f;
  const Json& points = member(j, "points", path);
  if (!points.is_array()) throw SchemaError(path + ".points", "expected an array");
  for (size_t k = 0; k < points.size(); ++k) {
    if (!points[k].is_string()) {
      throw SchemaError(path + ".points[" + std::to_string(k) + "]", "expected a string");
    }
    f.points.push_back(points[k].get<std::string>());
  }
  f.fiber_dim = static_cast<int>(integer(member(j, "fiber_dim", path), path + ".fiber_dim"));
  const Json& values = member(j, "values", path);
  if (!values.is_object()) throw SchemaError(path + ".values", "expected an object");
  for (const auto& [label, m] : values.items()) {
    f.values[label] = matrix_from_json(m, path + ".values." + label);
  }
  try {
    f.validate();
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
  return f;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2); }

std::string serialize(const FactorizationCertificate& cert) { return dump_json(certificate_to_json(cert)); }
std::string serialize(const ObstructionCertificate& obs) { return dump_json(obstruction_to_json(obs)); }
std::string serialize(const VerificationReport& report) { return dump_json(report_to_json(report)); }

FactorizationCertificate deserialize_certificate(std::string_view text) {
  return certificate_from_json(parse_json(text));
}

ObstructionCertificate deserialize_obstruction(std::string_view text) {
  return obstruction_from_json(parse_json(text));
}

}  // namespace symfact
