#pragma once

#include <random>
#include <string>
#include <vector>

#include "mtqcl/gates.hpp"
#include "mtqcl/linalg.hpp"
#include "mtqcl/states.hpp"

namespace mtqcl {

using Rng = std::mt19937_64;

/// Orthonormalized complex Gaussian matrix (Gram-Schmidt QR, columns).
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

GateSpec random_gate(int arity, Rng& rng, std::string name = "RANDOM");

/// Uniform in the unit ball, or on the sphere when `pure` is set.
BlochVector random_bloch(Rng& rng, bool pure = false);

/// G G^dagger / Tr for complex Gaussian G: full rank and generically entangled.
DensityOperator random_density(int num_qubits, Rng& rng);

/// |psi><psi| for a random unit vector.
DensityOperator random_pure_state(int num_qubits, Rng& rng);

/// Random product state; the per-wire Bloch vectors are written to `factors`.
DensityOperator random_product_state(int num_qubits, Rng& rng, std::vector<BlochVector>& factors);

}  // namespace mtqcl
