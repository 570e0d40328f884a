#include "symfact/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace symfact {

ConjugatePairing pair_conjugates(std::span<const cplx> eigenvalues, double cluster_tol) {
  ConjugatePairing out;
  std::vector<Eigen::Index> upper;
  std::vector<Eigen::Index> lower;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(eigenvalues.size()); ++j) {
    const cplx z = eigenvalues[static_cast<size_t>(j)];
    if (distance_to_signs(z) <= cluster_tol) {
      out.self_paired.push_back(j);
    } else if (z.imag() > 0.0) {
      upper.push_back(j);
    } else {
      lower.push_back(j);
    }
  }
  auto at = [&](Eigen::Index j) { return eigenvalues[static_cast<size_t>(j)]; };
  // Both halves keyed by the angle of the upper-half representative.
  auto key = [&](Eigen::Index j) { return std::abs(std::arg(at(j))); };
  auto by_key = [&](Eigen::Index a, Eigen::Index b) { return key(a) < key(b); };
  std::stable_sort(upper.begin(), upper.end(), by_key);
  std::stable_sort(lower.begin(), lower.end(), by_key);

  std::vector<Eigen::Index> left_upper;
  std::vector<Eigen::Index> left_lower;
  size_t a = 0;
  size_t b = 0;
  while (a < upper.size() && b < lower.size()) {
    const cplx u = at(upper[a]);
    const cplx l = at(lower[b]);
    if (std::abs(u - std::conj(l)) <= cluster_tol) {
      out.pairs.emplace_back(upper[a], lower[b]);
      ++a;
      ++b;
    } else if (key(upper[a]) < key(lower[b])) {
      left_upper.push_back(upper[a++]);
    } else {
      left_lower.push_back(lower[b++]);
    }
  }
  while (a < upper.size()) left_upper.push_back(upper[a++]);
  while (b < lower.size()) left_lower.push_back(lower[b++]);

  if (left_upper.empty() && left_lower.empty()) return out;

  out.closed = false;
  // Report the unmatched eigenvalue of smallest angle.
  const bool from_upper = !left_upper.empty() &&
                          (left_lower.empty() || key(left_upper.front()) <= key(left_lower.front()));
  const Eigen::Index bad = from_upper ? left_upper.front() : left_lower.front();
  const auto& others = from_upper ? left_lower : left_upper;
  out.unmatched = at(bad);
  double margin = 2.0 * std::abs(out.unmatched.imag());
  for (auto o : others) margin = std::min(margin, std::abs(std::conj(out.unmatched) - at(o)));
  out.margin = margin;
  return out;
}

int arc_index(cplx z) {
  if (distance_to_fourth_roots(z) == 0.0) return 0;
  const double t = unit_angle(z);
  const int k = static_cast<int>(std::floor(t / (kPi / 2.0))) + 1;
  return std::clamp(k, 1, 4);
}

cplx arc_midpoint(int k) { return std::polar(1.0, 2.0 * kPi * (2.0 * k - 1.0) / 8.0); }

double distance_to_fourth_roots(cplx z) {
  const cplx roots[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  double d = std::numeric_limits<double>::infinity();
  for (const auto& r : roots) d = std::min(d, std::abs(z - r));
  return d;
}

std::optional<ArcConfinement> common_arc(std::span<const cplx> eigenvalues) {
  if (eigenvalues.empty()) return std::nullopt;
  ArcConfinement out;
  out.arc = arc_index(eigenvalues.front());
  out.margin = std::numeric_limits<double>::infinity();
  for (const auto& z : eigenvalues) {
    const int k = arc_index(z);
    if (k == 0 || k != out.arc) return std::nullopt;
    out.margin = std::min(out.margin, distance_to_fourth_roots(z));
  }
  return out;
}

}  // namespace symfact
