#include "mtqcl/circuits.hpp"

#include <algorithm>
#include <string>

namespace mtqcl {

Circuit::Circuit(int num_wires) : num_wires_(num_wires) {
  if (num_wires < 1) throw std::invalid_argument("circuit needs at least one wire");
}

Circuit& Circuit::add(GateSpec gate, std::vector<int> wires,
                      std::optional<WireSet> declared_targets) {
  if (static_cast<int>(wires.size()) != gate.arity()) {
    throw std::invalid_argument("gate '" + gate.name() + "' has arity " +
                                std::to_string(gate.arity()) + " but " +
                                std::to_string(wires.size()) + " wires were given");
  }
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (wires[i] < 1 || wires[i] > num_wires_) {
      throw std::out_of_range("wire " + std::to_string(wires[i]) + " out of range 1.." +
                              std::to_string(num_wires_));
    }
    if (i > 0 && wires[i] <= wires[i - 1]) {
      throw std::invalid_argument("gate wires must be strictly increasing");
    }
  }
  if (declared_targets) {
    for (int t : *declared_targets) {
      if (std::find(wires.begin(), wires.end(), t) == wires.end()) {
        throw std::invalid_argument("declared target " + std::to_string(t) +
                                    " is not a wire of gate '" + gate.name() + "'");
      }
    }
  }
  steps_.push_back({std::move(gate), std::move(wires), std::move(declared_targets)});
  return *this;
}

Circuit concatenate(const Circuit& first, const Circuit& second) {
  if (first.num_wires() != second.num_wires()) {
    throw DimensionError("concatenate: circuits have different wire counts");
  }
  Circuit out = first;
  for (const auto& s : second.steps()) out.add(s.gate, s.wires, s.declared_targets);
  return out;
}

void check_cap(int num_wires, int cap) {
  if (num_wires > cap) {
    throw CapExceededError("circuit has " + std::to_string(num_wires) +
                           " wires, above the cap of " + std::to_string(cap));
  }
}

ComplexMatrix lower_step(const PlacedGate& step, int num_wires) {
  const auto& w = step.wires;
  switch (step.gate.arity()) {
    case 1:
      return embed_unary(step.gate, num_wires, w[0]);
    case 2:
      return embed_binary(step.gate, num_wires, w[0], w[1]);
    case 3:
      if (identify(step.gate) == LibraryGate::Fredkin) {
        return embed_fredkin(num_wires, w[0], w[1], w[2]);
      }
      [[fallthrough]];
    default:
      return embed_via_swap_chain(step.gate, num_wires, w);
  }
}

ComplexMatrix lower_step_via_swap_chain(const PlacedGate& step, int num_wires) {
  return embed_via_swap_chain(step.gate, num_wires, step.wires);
}

namespace {

template <typename Lower>
ComplexMatrix compose_with(const Circuit& c, int cap, Lower lower) {
  check_cap(c.num_wires(), cap);
  ComplexMatrix u = identity_qubits(c.num_wires());
  for (const auto& step : c.steps()) u = matmul(lower(step, c.num_wires()), u);
  return u;
}

}  // namespace

ComplexMatrix compose_unitary(const Circuit& c, int cap) {
  return compose_with(c, cap, lower_step);
}

ComplexMatrix compose_unitary_via_swap_chain(const Circuit& c, int cap) {
  return compose_with(c, cap, lower_step_via_swap_chain);
}

WireSet structural_targets(const GateSpec& g, double tol) {
  WireSet out;
  const int a = g.arity();
  for (int pos = 1; pos <= a; ++pos) {
    ComplexMatrix probe =
        kron_all({identity_qubits(pos - 1), structural().p1, identity_qubits(a - pos)});
    if (commutator_norm(g.matrix(), probe) > tol) out.insert(pos);
  }
  return out;
}

WireSet gate_target_wires(const PlacedGate& pg, double tol) {
  if (pg.declared_targets) return *pg.declared_targets;
  WireSet out;
  for (int pos : structural_targets(pg.gate, tol)) out.insert(pg.wires[pos - 1]);
  return out;
}

TargetProfile circuit_target_profile(const Circuit& c, double tol) {
  TargetProfile profile;
  for (const auto& step : c.steps()) profile.targets.merge(gate_target_wires(step, tol));
  for (int w = 1; w <= c.num_wires(); ++w) {
    if (!profile.targets.contains(w)) profile.controls.insert(w);
  }
  return profile;
}

DensityOperator apply(const Circuit& c, const DensityOperator& rho, int cap) {
  if (rho.num_qubits() != c.num_wires()) {
    throw DimensionError("apply: state has " + std::to_string(rho.num_qubits()) +
                         " qubits but circuit has " + std::to_string(c.num_wires()) + " wires");
  }
  const ComplexMatrix u = compose_unitary(c, cap);
  return DensityOperator::assume_valid(matmul(u, matmul(rho.matrix(), dagger(u))));
}

}  // namespace mtqcl
