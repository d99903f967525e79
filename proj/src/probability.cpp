#include "mtqcl/probability.hpp"

#include <algorithm>
#include <optional>

namespace mtqcl {

namespace {

const ComplexMatrix& p0() { return structural().p0; }
const ComplexMatrix& p1() { return structural().p1; }

// Closed forms and lambdas assume the structural roles; a declared override
// that disagrees with them describes a different probability.
bool uses_structural_roles(const PlacedGate& step, double tol) {
  if (!step.declared_targets) return true;
  return *step.declared_targets == gate_target_wires({step.gate, step.wires, {}}, tol);
}

std::optional<LibraryGate> single_step_kind(const Circuit& c, double tol) {
  if (c.steps().size() != 1) return std::nullopt;
  const auto& step = c.steps().front();
  if (!uses_structural_roles(step, tol)) return std::nullopt;
  return identify(step.gate);
}

bool is_cnot_ladder(const Circuit& c) {
  if (c.num_wires() != 3 || c.steps().size() != 3) return false;
  const auto& s = c.steps();
  auto is = [](const PlacedGate& pg, LibraryGate kind, std::vector<int> wires) {
    return !pg.declared_targets && identify(pg.gate) == kind && pg.wires == wires;
  };
  return is(s[0], LibraryGate::CNot, {2, 3}) && is(s[1], LibraryGate::CNot, {1, 2}) &&
         is(s[2], LibraryGate::Hadamard, {3});
}

void add_closed_forms(const Circuit& c, std::span<const BlochVector> factors, double tol,
                      std::map<std::string, double>& values) {
  if (factors.size() != static_cast<std::size_t>(c.num_wires())) return;
  if (is_cnot_ladder(c)) {
    values[evaluator::kClosedFormCnotLadder] = cnot_ladder_closed_form(factors[0], factors[1], factors[2]);
    return;
  }
  const auto kind = single_step_kind(c, tol);
  if (!kind) return;
  const auto& w = c.steps().front().wires;
  auto f = [&](std::size_t i) -> const BlochVector& { return factors[w[i] - 1]; };
  switch (*kind) {
    case LibraryGate::Not:
      values[evaluator::kClosedFormSingle] = closed_form_single(SingleGateKind::Not, f(0));
      break;
    case LibraryGate::Hadamard:
      values[evaluator::kClosedFormSingle] = closed_form_single(SingleGateKind::SqrtI, f(0));
      break;
    case LibraryGate::SqrtNot:
      values[evaluator::kClosedFormSingle] = closed_form_single(SingleGateKind::SqrtNot, f(0));
      break;
    case LibraryGate::CNot:
      values[evaluator::kClosedFormCnot] = closed_form_cnot(f(0), f(1));
      break;
    case LibraryGate::Toffoli:
      values[evaluator::kClosedFormToffoli] = closed_form_toffoli(f(0), f(1), f(2));
      break;
    case LibraryGate::Swap:
    case LibraryGate::SqrtSwap: {
      const BlochVector pair[] = {f(0), f(1)};
      values[evaluator::kClosedFormProduct] = closed_form_products(
          *kind == LibraryGate::Swap ? ProductGateKind::Swap : ProductGateKind::SqrtSwap, pair);
      break;
    }
    case LibraryGate::Fredkin: {
      const BlochVector triple[] = {f(0), f(1), f(2)};
      values[evaluator::kClosedFormProduct] =
          closed_form_products(ProductGateKind::Fredkin, triple);
      break;
    }
    case LibraryGate::Identity:
      break;
  }
}

void add_lambda_evaluators(const Circuit& c, const DensityOperator& rho,
                           const EvaluationOptions& opts, std::map<std::string, double>& values) {
  if (c.steps().size() != 1) return;
  const auto& step = c.steps().front();
  if (!uses_structural_roles(step, opts.tol)) return;
  const auto& w = step.wires;
  if (step.gate.arity() == 2) {
    const int n = w[1] - w[0];
    const WireSet roles = structural_targets(step.gate, opts.tol);
    if (auto inner = controlled_inner(step.gate, opts.tol)) {
      if (roles == WireSet{2}) {
        const ComplexMatrix lambda = lambda_controlled(GateSpec("inner", *inner), n);
        values[evaluator::kLambdaControlled] = lambda_probability(lambda, w[0], rho);
      }
    } else if (roles == WireSet{1, 2}) {
      values[evaluator::kLambdaBinary] =
          lambda_probability(lambda_binary(step.gate, n), w[0], rho);
    }
  } else if (step.gate.arity() == 3 && identify(step.gate) == LibraryGate::Fredkin) {
    const ComplexMatrix lambda = lambda_fredkin(w[1] - w[0], w[2] - w[1], opts.fredkin_form);
    values[evaluator::kLambdaFredkin] = lambda_probability(lambda, w[0], rho);
  }
}

double spread(const std::map<std::string, double>& values) {
  if (values.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end(),
                                      [](const auto& a, const auto& b) { return a.second < b.second; });
  return hi->second - lo->second;
}

void check_dims(const Circuit& c, const DensityOperator& rho) {
  if (rho.num_qubits() != c.num_wires()) {
    throw DimensionError("state has " + std::to_string(rho.num_qubits()) +
                         " qubits but circuit has " + std::to_string(c.num_wires()) + " wires");
  }
}

}  // namespace

double qcl_probability(const DensityOperator& rho) {
  const ComplexMatrix proj = lift_to_last(p1(), rho.num_qubits());
  return trace_of_product(proj, rho.matrix()).real();
}

double truth_probability(const BlochVector& b) { return 0.5 * (1.0 - b.r3); }

TruthProjector truth_projector(int num_wires, const WireSet& targets) {
  if (num_wires < 1) throw std::invalid_argument("truth_projector: need at least one wire");
  TruthProjector out{identity_qubits(0), {}};
  for (int w = 1; w <= num_wires; ++w) {
    const bool is_target = targets.contains(w);
    out.factor_tags.push_back(is_target ? FactorTag::P1 : FactorTag::Identity);
    out.matrix = kron(out.matrix, is_target ? p1() : ComplexMatrix::identity(2));
  }
  for (int t : targets) {
    if (t < 1 || t > num_wires) {
      throw std::out_of_range("truth_projector: target " + std::to_string(t) + " outside 1.." +
                              std::to_string(num_wires));
    }
  }
  return out;
}

double ProbabilityReport::value() const {
  return value_by_evaluator.at(evaluator::kDefinitional);
}

double display_value(double raw) {
  if (raw < 0.0 && raw >= -kDefaultTol) return 0.0;
  if (raw > 1.0 && raw <= 1.0 + kDefaultTol) return 1.0;
  return raw;
}

double definitional_probability(const Circuit& c, const DensityOperator& rho,
                                const EvaluationOptions& opts) {
  check_dims(c, rho);
  const TargetProfile profile = circuit_target_profile(c, opts.tol);
  const ComplexMatrix out = apply(c, rho, opts.cap).matrix();
  return trace_of_product(truth_projector(c.num_wires(), profile.targets).matrix, out).real();
}

ProbabilityReport mtqcl_probability(const Circuit& c, const DensityOperator& rho,
                                    std::span<const BlochVector> factors,
                                    const EvaluationOptions& opts) {
  check_dims(c, rho);
  ProbabilityReport report;
  report.target_profile = circuit_target_profile(c, opts.tol);
  auto& values = report.value_by_evaluator;
  values[evaluator::kDefinitional] = definitional_probability(c, rho, opts);
  if (report.target_profile.targets.empty()) values[evaluator::kIdentityTheorem] = 1.0;
  add_closed_forms(c, factors, opts.tol, values);
  report.max_discrepancy = spread(values);
  return report;
}

ProbabilityReport crosscheck(const Circuit& c, const DensityOperator& rho,
                             std::span<const BlochVector> factors, const EvaluationOptions& opts) {
  ProbabilityReport report = mtqcl_probability(c, rho, factors, opts);
  auto& values = report.value_by_evaluator;
  const int k = c.num_wires();

  const ComplexMatrix u = compose_unitary(c, opts.cap);
  const ComplexMatrix pi = truth_projector(k, report.target_profile.targets).matrix;
  const ComplexMatrix pulled_back = matmul(dagger(u), matmul(pi, u));
  values[evaluator::kHeisenberg] = trace_of_product(pulled_back, rho.matrix()).real();

  if (report.target_profile.targets == WireSet{k}) {
    values[evaluator::kQclOneTarget] = qcl_probability(apply(c, rho, opts.cap));
  }
  add_lambda_evaluators(c, rho, opts, values);
  report.max_discrepancy = spread(values);
  return report;
}

double closed_form_single(SingleGateKind kind, const BlochVector& b) {
  switch (kind) {
    case SingleGateKind::Not:
      return 0.5 * (1.0 + b.r3);
    case SingleGateKind::SqrtI:
      return 0.5 * (1.0 - b.r1);
    case SingleGateKind::SqrtNot:
      return 0.5 * (1.0 - b.r2);
  }
  return 0.0;
}

double closed_form_cnot(const BlochVector& control, const BlochVector& target) {
  return 0.5 * (1.0 - control.r3 * target.r3);
}

double closed_form_toffoli(const BlochVector& c1, const BlochVector& c2, const BlochVector& t) {
  const double r = c1.r3;
  const double s = c2.r3;
  return 0.25 * (2.0 + (r * (s - 1.0) - s - 1.0) * t.r3);
}

double closed_form_products(ProductGateKind kind, std::span<const BlochVector> blochs) {
  const std::size_t expected = kind == ProductGateKind::Fredkin ? 3 : 2;
  if (blochs.size() != expected) {
    throw std::invalid_argument("closed_form_products: expected " + std::to_string(expected) +
                                " Bloch vectors, got " + std::to_string(blochs.size()));
  }
  // Fredkin's first wire is its control.
  const std::size_t first_target = kind == ProductGateKind::Fredkin ? 1 : 0;
  double p = 1.0;
  for (std::size_t i = first_target; i < blochs.size(); ++i) p *= truth_probability(blochs[i]);
  return p;
}

double cnot_ladder_closed_form(const BlochVector& rho, const BlochVector& sigma,
                               const BlochVector& tau) {
  return 0.25 * (1.0 - rho.r3 * sigma.r3) * (1.0 - tau.r1);
}

double cnot_ladder_qcl_form(double p_rho, double p_sigma, double t1) {
  return 0.25 * ((1.0 - 2.0 * p_rho) * (1.0 - 2.0 * p_sigma) - 1.0) * (t1 - 1.0);
}

ComplexMatrix lambda_binary(const GateSpec& u, int n) {
  if (u.arity() != 2) throw DimensionError("lambda_binary: gate '" + u.name() + "' is not binary");
  if (n < 1) throw std::out_of_range("lambda_binary: n must be at least 1");
  if (controlled_inner(u)) {
    throw ControlledFormError("lambda_binary: gate '" + u.name() +
                              "' is a control-target gate; use lambda_controlled");
  }
  if (structural_targets(u) != WireSet{1, 2}) {
    throw std::invalid_argument("lambda_binary: gate '" + u.name() +
                                "' does not have both wires in target position");
  }
  const auto& m = u.matrix();
  const ComplexMatrix u21 = sub_block(m, 2, 1, 0);
  const ComplexMatrix u22 = sub_block(m, 2, 1, 1);
  auto block = [&](const ComplexMatrix& left, const ComplexMatrix& right) {
    return lift_to_last(matmul(dagger(left), matmul(p1(), right)), n);
  };
  return block_matrix(block(u21, u21), block(u21, u22), block(u22, u21), block(u22, u22));
}

ComplexMatrix lambda_controlled(const GateSpec& inner, int n) {
  if (inner.arity() != 1) {
    throw DimensionError("lambda_controlled: inner gate '" + inner.name() + "' is not unary");
  }
  if (n < 1) throw std::out_of_range("lambda_controlled: n must be at least 1");
  const auto& v = inner.matrix();
  const ComplexMatrix zero(std::size_t{1} << n);
  return block_matrix(lift_to_last(p1(), n), zero, zero,
                      lift_to_last(matmul(dagger(v), matmul(p1(), v)), n));
}

ComplexMatrix lambda_fredkin(int n, int l, FredkinLambdaForm form) {
  if (n < 1 || l < 1) throw std::out_of_range("lambda_fredkin: n and l must be at least 1");
  if (form == FredkinLambdaForm::TransposedDisplay) {
    return kron_all({p0(), lift_to_last(p1(), n), lift_to_last(p1(), l)}) +
           kron_all({p1(), lift_to_last(p1(), l), lift_to_last(p1(), n)});
  }
  const ComplexMatrix f =
      kron(p0(), identity_qubits(n + l)) + kron(p1(), swap_long(n + l, n, n + l));
  const ComplexMatrix pi =
      kron_all({ComplexMatrix::identity(2), lift_to_last(p1(), n), lift_to_last(p1(), l)});
  return matmul(dagger(f), matmul(pi, f));
}

ComplexMatrix extend_lambda(const ComplexMatrix& lambda, int num_wires, int m) {
  const int span = qubit_count(lambda.dim());
  if (m < 1 || m + span - 1 > num_wires) {
    throw std::out_of_range("extend_lambda: span of " + std::to_string(span) + " wires at " +
                            std::to_string(m) + " does not fit in " + std::to_string(num_wires));
  }
  return kron_all({identity_qubits(m - 1), lambda, identity_qubits(num_wires - m - span + 1)});
}

double lambda_probability(const ComplexMatrix& lambda, int m, const DensityOperator& rho) {
  return trace_of_product(extend_lambda(lambda, rho.num_qubits(), m), rho.matrix()).real();
}

}  // namespace mtqcl
