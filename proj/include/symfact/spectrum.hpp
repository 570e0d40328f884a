#pragma once

#include "symfact/matcore.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace symfact {

// Result of matching a unitary's eigenvalues with their complex conjugates.
struct ConjugatePairing {
  // (index with Im > 0, index with Im < 0) into the eigenvalue list.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  // Eigenvalues within cluster_tol of +1 or -1; they pair with themselves.
  std::vector<Eigen::Index> self_paired;

  bool closed = true;
  // First eigenvalue left without a partner, when !closed.
  cplx unmatched{0.0, 0.0};
  // Distance from conj(unmatched) to the nearest eigenvalue that could still
  // partner it (or to unmatched itself, i.e. 2|Im|, when none is left).
  double margin = 0.0;
};

// Sorted two-pointer matching of the upper half-circle eigenvalues against
// the conjugates of the lower ones.
ConjugatePairing pair_conjugates(std::span<const cplx> eigenvalues, double cluster_tol);

// Open quarter arcs C_1..C_4 between consecutive fourth roots of unity.
// Returns 0 for a point on (or numerically at) a root.
int arc_index(cplx z);

// Midpoint exp(2 pi i (2k-1)/8) of arc C_k.
cplx arc_midpoint(int k);

double distance_to_fourth_roots(cplx z);

struct ArcConfinement {
  int arc = 0;
  double margin = 0.0;  // dist(spectrum, {1, i, -1, -i})
};

// Arc shared by every eigenvalue, if any, with the margin to the roots.
std::optional<ArcConfinement> common_arc(std::span<const cplx> eigenvalues);

}  // namespace symfact
