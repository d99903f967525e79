#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mtqcl/linalg.hpp"

namespace mtqcl {

class NonUnitaryGateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A named unitary acting on `arity` wires (matrix dimension 2^arity).
class GateSpec {
 public:
  /// Throws DimensionError for a non power-of-two matrix and
  /// NonUnitaryGateError when U^dagger U deviates from I by more than `tol`.
  GateSpec(std::string name, ComplexMatrix matrix, double tol = kDefaultTol);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] int arity() const { return arity_; }
  [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }

  friend bool operator==(const GateSpec&, const GateSpec&) = default;

 private:
  std::string name_;
  int arity_;
  ComplexMatrix matrix_;
};

/// Projectors and ladder operators used by the block constructions.
struct StructuralConstants {
  ComplexMatrix p0;  // |0><0|
  ComplexMatrix p1;  // |1><1|
  ComplexMatrix l0;  // |0><1|
  ComplexMatrix l1;  // |1><0|
};

const StructuralConstants& structural();

namespace gates {

GateSpec identity();
GateSpec not_gate();
/// Hadamard, a.k.a. the square root of the identity.
GateSpec hadamard();
/// 1/2 [[1+i, 1-i], [1-i, 1+i]]; squares to NOT.
GateSpec sqrt_not();
GateSpec cnot();
GateSpec toffoli();
GateSpec swap();
/// Fixes |00> and |11>, acts as sqrt_not on span{|01>, |10>}; squares to SWAP.
GateSpec sqrt_swap();
GateSpec fredkin();

}  // namespace gates

enum class LibraryGate { Identity, Not, Hadamard, SqrtNot, CNot, Toffoli, Swap, SqrtSwap, Fredkin };

/// Identifies a library gate by exact matrix equality (names are ignored).
std::optional<LibraryGate> identify(const GateSpec& g);

/// Resolves a CLI gate name: I, NOT, H, SQRTNOT, CNOT, TOFFOLI, SWAP,
/// SQRTSWAP, FREDKIN or CONTROLLED(<name>), nested arbitrarily.
std::optional<GateSpec> library_gate(std::string_view name);

/// CU = P0 (x) I + P1 (x) U, named "CONTROLLED(<name>)".
GateSpec controlled(const GateSpec& u);

/// For a binary gate of the form [[I, 0], [0, V]] returns V.
std::optional<ComplexMatrix> controlled_inner(const GateSpec& g, double tol = kDefaultTol);

/// Swap of wires m and span_end over k wires (1-based), built from the
/// ladder-operator block form [[P0^(n), L1^(n)], [L0^(n), P1^(n)]].
ComplexMatrix swap_long(int k, int m, int span_end);

/// Adjacent transposition of wires i and i+1 over k wires.
ComplexMatrix adjacent_swap(int k, int i);

/// Transposition of wires m and span_end as a product of 2(span_end-m)-1
/// adjacent swaps. Reference construction for swap_long.
ComplexMatrix adjacent_swap_chain(int k, int m, int span_end);

/// I^{(i-1)} (x) U (x) I^{(k-i)}.
ComplexMatrix embed_unary(const GateSpec& u, int k, int i);

/// Binary gate on wires (m, span_end), wire m being the gate's first wire.
/// Uses the block form I^{(m-1)} (x) [[U11^(n), U12^(n)], [U21^(n), U22^(n)]] (x) I.
ComplexMatrix embed_binary(const GateSpec& u, int k, int m, int span_end);

/// Fredkin with control m and targets t1 < t2:
/// I^{(m-1)} (x) (P0 (x) I^{(n+l)} + P1 (x) Swap_[n+l; n, n+l]) (x) I.
ComplexMatrix embed_fredkin(int k, int m, int t1, int t2);

/// Reference lowering for any arity: adjacent swaps move the listed wires
/// next to the last one, the gate is applied there, then the moves are undone.
ComplexMatrix embed_via_swap_chain(const GateSpec& u, int k, std::span<const int> wires);

}  // namespace mtqcl
