#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "mtqcl/gates.hpp"
#include "mtqcl/linalg.hpp"
#include "mtqcl/states.hpp"

namespace mtqcl {

/// Default limit on the number of wires for dense composition (1024 x 1024).
inline constexpr int kDefaultWireCap = 10;

class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WireSet = std::set<int>;

/// A gate bound to strictly increasing 1-based wires. The gate's i-th wire
/// is wires[i]. `declared_targets`, when present, replaces the structural
/// target classification for this step.
struct PlacedGate {
  GateSpec gate;
  std::vector<int> wires;
  std::optional<WireSet> declared_targets;

  friend bool operator==(const PlacedGate&, const PlacedGate&) = default;
};

/// Ordered gate applications on k wires. steps[0] acts on the state first,
/// so in operator notation later steps multiply on the left.
class Circuit {
 public:
  explicit Circuit(int num_wires);

  /// Appends a step; throws std::out_of_range / std::invalid_argument when
  /// the wire list is not a strictly increasing list of gate.arity() wires in
  /// 1..k, or when a declared target is not one of the gate's wires.
  Circuit& add(GateSpec gate, std::vector<int> wires,
               std::optional<WireSet> declared_targets = std::nullopt);

  [[nodiscard]] int num_wires() const { return num_wires_; }
  [[nodiscard]] const std::vector<PlacedGate>& steps() const { return steps_; }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int num_wires_;
  std::vector<PlacedGate> steps_;
};

/// c1 followed by c2.
Circuit concatenate(const Circuit& first, const Circuit& second);

/// Control/target split of the circuit wires. Wires that are neither are
/// folded into `controls`; both carry the identity factor in the truth projector.
struct TargetProfile {
  WireSet targets;
  WireSet controls;

  friend bool operator==(const TargetProfile&, const TargetProfile&) = default;
};

void check_cap(int num_wires, int cap);

/// 2^k matrix of one step, lowered with the cheapest applicable embedding.
ComplexMatrix lower_step(const PlacedGate& step, int num_wires);

/// Same, but always through the adjacent-swap chain.
ComplexMatrix lower_step_via_swap_chain(const PlacedGate& step, int num_wires);

/// Product of the lowered steps, later steps on the left.
ComplexMatrix compose_unitary(const Circuit& c, int cap = kDefaultWireCap);

/// Reference composition using lower_step_via_swap_chain for every step.
ComplexMatrix compose_unitary_via_swap_chain(const Circuit& c, int cap = kDefaultWireCap);

/// Positions (1..arity) within the gate's own space that are targets: the
/// gate fails to commute with P1 placed at that position.
WireSet structural_targets(const GateSpec& g, double tol = kDefaultTol);

/// Circuit wires that are targets of this step. Uses the declared override when present.
WireSet gate_target_wires(const PlacedGate& pg, double tol = kDefaultTol);

/// Union of per-step targets; a wire is a target if it is one at any step.
TargetProfile circuit_target_profile(const Circuit& c, double tol = kDefaultTol);

/// U rho U^dagger with U = compose_unitary(c).
DensityOperator apply(const Circuit& c, const DensityOperator& rho, int cap = kDefaultWireCap);

}  // namespace mtqcl
