#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "discordia/qmat.hpp"

namespace discordia {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw. Independent of
/// the standard library's distribution implementations, so sampled outcomes
/// are reproducible across toolchains.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Square matrix of i.i.d. standard complex Gaussians (real and imaginary
/// parts each N(0, 1/2)).
CMatrix ginibre(int d, Rng& rng);

/// Hilbert–Schmidt random density matrix: G G† / Tr(G G†).
QState random_state(std::vector<int> dims, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with the phase fix on R's diagonal).
CMatrix random_unitary(int d, Rng& rng);

/// Bell-diagonal two-qubit state with Dirichlet(1,1,1,1) weights on the
/// four Bell projectors.
QState random_bell_diagonal(Rng& rng);

/// Σ p_ij |a_i⟩⟨a_i| ⊗ |b_j⟩⟨b_j| with random weights and Haar-random local
/// bases; zero discord on either side.
QState random_classical_classical(Rng& rng);

/// Σ_b p_b ρ_A^(b) ⊗ |b⟩⟨b| with random ρ_A^(b) and a Haar-random basis on B.
QState random_classical_quantum(Rng& rng);

}  // namespace discordia
