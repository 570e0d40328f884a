#pragma once

// Seeded test-instance generators. Deterministic per arguments within one
// build; no stream compatibility across standard libraries is promised.

#include "symfact/factor.hpp"
#include "symfact/matcore.hpp"

#include <cstdint>
#include <vector>

namespace symfact {

// Q diag(lambda) Q^* with Q Haar distributed.
ComplexMatrix unitary_with_spectrum(std::span<const cplx> eigenvalues, std::uint64_t seed);

// Spectrum drawn uniformly from the open arc C_k shrunk by `inset` (a
// fraction of the arc length) at both ends.
ComplexMatrix arc_unitary(int dim, std::uint64_t seed, int arc, double inset = 0.05);

// Spectrum closed under conjugation: random conjugate pairs plus +-1 fillers.
ComplexMatrix conj_symmetric_unitary(int dim, std::uint64_t seed);

// Random spectrum spec of total dimension `dim` satisfying the 2q'
// multiplicity rule, with pi-denominators q' <= max_pi_denominator.
FiniteSpectrumSpec random_finite_spectrum_spec(int dim, std::uint64_t seed,
                                               int max_pi_denominator = 6);

// Diagonal target of a spec, in entry order.
std::vector<cplx> spectrum_values(const FiniteSpectrumSpec& spec);

}  // namespace symfact
