#pragma once

// Internal helpers shared by the factorization routines.

#include "symfact/factor.hpp"

#include <utility>
#include <vector>

namespace symfact::detail {

// A diagonal unitary whose entries come in conjugate pairs plus +-1 singles.
struct PairedDiagonal {
  struct Pair {
    Eigen::Index first;
    Eigen::Index second;
    cplx value;  // entry at `first`; `second` holds conj(value)
  };
  struct Single {
    Eigen::Index index;
    double sign;
  };
  Eigen::Index dim = 0;
  std::vector<Pair> pairs;
  std::vector<Single> singles;
};

// (S, T) symmetric factors with S T = the diagonal described by `d`.
std::pair<ComplexMatrix, ComplexMatrix> factor_paired_diagonal(const PairedDiagonal& d,
                                                               double snap_tol);

// q x q^*
inline ComplexMatrix conjugate_by(const ComplexMatrix& q, const ComplexMatrix& x) {
  return q * x * q.adjoint();
}

// Swap block [[0, I_m], [I_m, 0]].
ComplexMatrix block_swap(Eigen::Index m);

// Symmetric embedding [[0, A^*], [A, 0]].
ComplexMatrix block_flip(const ComplexMatrix& a);

void require_unitary(const ComplexMatrix& a, const char* name, const Tolerance& tol);

}  // namespace symfact::detail
