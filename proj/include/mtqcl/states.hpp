#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtqcl/linalg.hpp"

namespace mtqcl {

class InvalidStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Single-qubit Bloch parameterization. Note the truth convention: r3 = +1 is
/// |0> (false) and r3 = -1 is |1> (true), so Tr(P1 rho) = (1 - r3) / 2.
struct BlochVector {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  [[nodiscard]] double norm() const;
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// Density operator on k qubits. The matrix is Hermitian, trace one and
/// positive semidefinite within tolerance when built through `from_matrix`.
class DensityOperator {
 public:
  /// Validates all three invariants; throws InvalidStateError listing violations.
  static DensityOperator from_matrix(ComplexMatrix m, double tol = kDefaultTol);

  /// Skips validation. For operations known to preserve the invariants
  /// (conjugation by a unitary, tensor products of valid states).
  static DensityOperator assume_valid(ComplexMatrix m);

  [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
  [[nodiscard]] int num_qubits() const { return num_qubits_; }

  friend bool operator==(const DensityOperator&, const DensityOperator&) = default;

 private:
  DensityOperator(ComplexMatrix m, int k) : matrix_(std::move(m)), num_qubits_(k) {}

  ComplexMatrix matrix_;
  int num_qubits_ = 0;
};

struct Violation {
  enum class Kind { NotHermitian, TraceNotOne, NegativeEigenvalue };
  Kind kind;
  /// The measured quantity: Hermitian deviation, the trace, or the minimum eigenvalue.
  double measured;

  [[nodiscard]] std::string describe() const;
};

/// Checks the DensityOperator invariants. Empty result means valid.
std::vector<Violation> validate_density(const ComplexMatrix& m, double tol = kDefaultTol);
std::vector<Violation> validate_density(const DensityOperator& d, double tol = kDefaultTol);

DensityOperator bloch_to_density(const BlochVector& b, double tol = kDefaultTol);
BlochVector density_to_bloch(const DensityOperator& d);

/// |x><x| for the bit list x; first bit is the most significant index.
DensityOperator basis_register(std::span<const int> bits);

DensityOperator tensor_states(std::span<const DensityOperator> parts);

/// Product state from per-wire Bloch vectors, in wire order.
DensityOperator product_state(std::span<const BlochVector> factors);

double purity(const DensityOperator& d);

}  // namespace mtqcl
