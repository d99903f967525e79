#include "mtqcl/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "mtqcl/circuits.hpp"
#include "mtqcl/gates.hpp"
#include "mtqcl/probability.hpp"
#include "mtqcl/sampling.hpp"
#include "mtqcl/states.hpp"

namespace mtqcl::cli {

namespace {

constexpr double kStructuralTol = 1e-12;

class Tracker {
 public:
  explicit Tracker(std::string name) { result_.name = std::move(name); }

  void check(double error, double tol, const std::string& what) {
    ++result_.checks;
    if (std::isnan(error)) error = INFINITY;
    result_.worst_error = std::max(result_.worst_error, error);
    if (error > tol && result_.passed) {
      std::ostringstream os;
      os.precision(3);
      os << what << ": error " << std::scientific << error << " > " << tol;
      fail(os.str());
    }
  }

  void require(bool ok, const std::string& what) {
    ++result_.checks;
    if (!ok && result_.passed) fail(what);
  }

  void fail(const std::string& detail) {
    result_.passed = false;
    result_.detail = detail;
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

struct Context {
  const VerifyConfig& config;
  Rng rng;
  Tracker tracker;

  [[nodiscard]] int kmax() const { return config.kmax; }
  [[nodiscard]] double tol() const { return config.tol; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  /// Strictly increasing random wires of the given count inside 1..k. With
  /// `spread` the first two wires are forced apart when there is room.
  std::vector<int> wires(int count, int k, bool spread) {
    std::vector<int> all(k);
    for (int i = 0; i < k; ++i) all[i] = i + 1;
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<int> pick(all.begin(), all.begin() + count);
      std::sort(pick.begin(), pick.end());
      const bool adjacent = pick.back() - pick.front() == count - 1;
      if (!spread || k == count || !adjacent) return pick;
    }
    std::vector<int> pick(all.begin(), all.begin() + count);
    std::sort(pick.begin(), pick.end());
    return pick;
  }
};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string placement(std::span<const int> w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

Circuit single(int k, const GateSpec& g, std::vector<int> wires) {
  Circuit c(k);
  c.add(g, std::move(wires));
  return c;
}

std::size_t basis_image(const ComplexMatrix& u, std::size_t input) {
  for (std::size_t r = 0; r < u.dim(); ++r) {
    if (std::abs(u(r, input) - Complex{1.0}) < kStructuralTol) return r;
  }
  return u.dim();
}

// ---------------------------------------------------------------------------

void suite_linalg(Context& ctx) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_unitary(2, ctx.rng);
    const auto b = random_unitary(4, ctx.rng);
    const auto c = random_unitary(2, ctx.rng);
    const auto d = random_unitary(4, ctx.rng);
    ctx.tracker.check(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), kStructuralTol,
                      "kron associativity");
    ctx.tracker.check(max_abs_diff(matmul(kron(a, b), kron(c, d)), kron(matmul(a, c), matmul(b, d))),
                      kStructuralTol, "mixed-product property");
    ctx.tracker.check(std::abs(trace(kron(a, b)) - trace(a) * trace(b)), kStructuralTol,
                      "trace of kron");
    ctx.tracker.require(dagger(dagger(b)) == b, "dagger involution");
    ctx.tracker.check(max_abs_diff(dagger(kron(a, b)), kron(dagger(a), dagger(b))),
                      kStructuralTol, "dagger of kron");
  }
}

void suite_states(Context& ctx) {
  for (int trial = 0; trial < 200; ++trial) {
    const BlochVector b = random_bloch(ctx.rng, trial % 2 == 0);
    const BlochVector back = density_to_bloch(bloch_to_density(b));
    ctx.tracker.check(std::max({std::abs(back.r1 - b.r1), std::abs(back.r2 - b.r2),
                                std::abs(back.r3 - b.r3)}),
                      kStructuralTol, "Bloch round trip");
    const double pur = purity(bloch_to_density(b));
    const bool pure_state = std::abs(pur - 1.0) <= ctx.tol();
    const bool on_sphere = std::abs(b.norm() - 1.0) <= ctx.tol();
    ctx.tracker.require(pure_state == on_sphere, "purity 1 iff Bloch norm 1");
    ctx.tracker.check(std::abs(qcl_probability(bloch_to_density(b)) - 0.5 * (1.0 - b.r3)),
                      kStructuralTol, "Tr(P1 rho) = (1 - r3)/2");
  }
  for (int k = 1; k <= std::min(ctx.kmax(), 4); ++k) {
    ctx.tracker.require(validate_density(random_density(k, ctx.rng)).empty(),
                        "random density operator is valid");
  }
}

void suite_swap_long(Context& ctx) {
  for (int k = 2; k <= ctx.kmax(); ++k) {
    const auto id = identity_qubits(k);
    for (int m = 1; m < k; ++m) {
      for (int s = m + 1; s <= k; ++s) {
        const auto block = swap_long(k, m, s);
        const std::string where = "k=" + std::to_string(k) + " " + placement(std::vector{m, s});
        ctx.tracker.check(max_abs_diff(block, adjacent_swap_chain(k, m, s)), kStructuralTol,
                          "swap_long vs adjacent chain " + where);
        ctx.tracker.check(max_abs_diff(matmul(block, block), id), kStructuralTol,
                          "swap_long self-inverse " + where);
      }
    }
  }
}

void suite_embed_binary(Context& ctx) {
  for (int trial = 0; trial < 50; ++trial) {
    const GateSpec u = random_gate(2, ctx.rng);
    for (int k = 2; k <= ctx.kmax(); ++k) {
      for (int m = 1; m < k; ++m) {
        for (int s = m + 1; s <= k; ++s) {
          const int wires[] = {m, s};
          const auto block = embed_binary(u, k, m, s);
          ctx.tracker.check(max_abs_diff(block, embed_via_swap_chain(u, k, wires)),
                            kStructuralTol,
                            "embed_binary vs swap chain k=" + std::to_string(k) + " " +
                                placement(wires));
          if (trial == 0) {
            ctx.tracker.check(unitarity_error(block), ctx.tol(), "embed_binary unitary");
          }
        }
      }
    }
  }
}

void suite_fredkin_embedding(Context& ctx) {
  const GateSpec f = gates::fredkin();
  for (int k = 3; k <= ctx.kmax(); ++k) {
    const auto id = identity_qubits(k);
    for (int m = 1; m <= k; ++m) {
      for (int t1 = m + 1; t1 <= k; ++t1) {
        for (int t2 = t1 + 1; t2 <= k; ++t2) {
          const int wires[] = {m, t1, t2};
          const auto block = embed_fredkin(k, m, t1, t2);
          const std::string where = "k=" + std::to_string(k) + " " + placement(wires);
          ctx.tracker.check(max_abs_diff(block, embed_via_swap_chain(f, k, wires)),
                            kStructuralTol, "embed_fredkin vs swap chain " + where);
          ctx.tracker.check(max_abs_diff(matmul(block, block), id), kStructuralTol,
                            "embed_fredkin self-inverse " + where);
        }
      }
    }
  }
}

void suite_gate_library(Context& ctx) {
  const std::vector<GateSpec> library = {gates::identity(), gates::not_gate(), gates::hadamard(),
                                         gates::sqrt_not(), gates::cnot(),     gates::toffoli(),
                                         gates::swap(),     gates::sqrt_swap(), gates::fredkin()};
  for (const auto& g : library) ctx.tracker.check(unitarity_error(g.matrix()), ctx.tol(), g.name() + " unitary");

  auto& t = ctx.tracker;
  t.check(max_abs_diff(matmul(gates::sqrt_not().matrix(), gates::sqrt_not().matrix()),
                       gates::not_gate().matrix()),
          kStructuralTol, "SQRTNOT^2 = NOT");
  t.check(max_abs_diff(matmul(gates::sqrt_swap().matrix(), gates::sqrt_swap().matrix()),
                       gates::swap().matrix()),
          kStructuralTol, "SQRTSWAP^2 = SWAP");
  t.require(controlled(gates::not_gate()).matrix() == gates::cnot().matrix(), "controlled(NOT) = CNOT");
  t.require(controlled(gates::cnot()).matrix() == gates::toffoli().matrix(), "controlled(CNOT) = TOFFOLI");
  t.require(controlled(gates::swap()).matrix() == gates::fredkin().matrix(), "controlled(SWAP) = FREDKIN");
  t.require(controlled(gates::identity()).matrix() == identity_qubits(2), "controlled(I) = I4");

  const auto& c = structural();
  for (int trial = 0; trial < 20; ++trial) {
    const GateSpec u = random_gate(1 + trial % 2, ctx.rng);
    const auto id = ComplexMatrix::identity(u.matrix().dim());
    t.require(controlled(u).matrix() == kron(c.p0, id) + kron(c.p1, u.matrix()),
              "controlled(u) = P0 (x) I + P1 (x) u");
  }

  // Semiclassical behaviour on the computational basis.
  const ComplexMatrix cn = gates::cnot().matrix();
  for (std::size_t x0 = 0; x0 < 2; ++x0) {
    for (std::size_t x1 = 0; x1 < 2; ++x1) {
      t.require(basis_image(cn, 2 * x0 + x1) == 2 * x0 + (x0 ^ x1), "CNOT |x0 x1> -> |x0, x0^x1>");
    }
  }
  const ComplexMatrix tf = gates::toffoli().matrix();
  for (std::size_t x = 0; x < 8; ++x) {
    const std::size_t a = x >> 2, b = (x >> 1) & 1, cc = x & 1;
    t.require(basis_image(tf, x) == (a << 2 | b << 1 | (cc ^ (a & b))), "TOFFOLI |abc> -> |ab, c^ab>");
  }

  // Structural roles.
  const std::vector<std::pair<GateSpec, WireSet>> roles = {
      {gates::identity(), {}},   {gates::not_gate(), {1}},  {gates::hadamard(), {1}},
      {gates::sqrt_not(), {1}},  {gates::cnot(), {2}},      {gates::toffoli(), {3}},
      {gates::swap(), {1, 2}},   {gates::sqrt_swap(), {1, 2}}, {gates::fredkin(), {2, 3}}};
  for (const auto& [g, expected] : roles) {
    t.require(structural_targets(g) == expected, g.name() + " target roles");
    const Complex phase = std::polar(1.0, std::uniform_real_distribution<double>(0, 6.28)(ctx.rng));
    t.require(structural_targets(GateSpec(g.name(), phase * g.matrix())) == expected,
              g.name() + " target roles under global phase");
  }
}

void suite_closed_forms(Context& ctx) {
  constexpr int kTrials = 500;
  std::vector<BlochVector> f;
  const std::pair<GateSpec, SingleGateKind> singles[] = {
      {gates::not_gate(), SingleGateKind::Not},
      {gates::hadamard(), SingleGateKind::SqrtI},
      {gates::sqrt_not(), SingleGateKind::SqrtNot}};
  for (const auto& [gate, kind] : singles) {
    for (int trial = 0; trial < kTrials; ++trial) {
      const int k = ctx.uniform(1, ctx.kmax());
      const auto rho = random_product_state(k, ctx.rng, f);
      const auto w = ctx.wires(1, k, false);
      const double got = definitional_probability(single(k, gate, w), rho);
      ctx.tracker.check(std::abs(got - closed_form_single(kind, f[w[0] - 1])), ctx.tol(),
                        gate.name() + " closed form at " + placement(w));
    }
  }
  for (int trial = 0; trial < kTrials; ++trial) {
    const int k = ctx.uniform(2, ctx.kmax());
    const auto rho = random_product_state(k, ctx.rng, f);
    const auto w = ctx.wires(2, k, trial % 2 == 0);
    const double got = definitional_probability(single(k, gates::cnot(), w), rho);
    ctx.tracker.check(std::abs(got - closed_form_cnot(f[w[0] - 1], f[w[1] - 1])), ctx.tol(),
                      "CNOT closed form at " + placement(w));
  }
  for (int trial = 0; trial < kTrials; ++trial) {
    const int k = ctx.uniform(3, ctx.kmax());
    const auto rho = random_product_state(k, ctx.rng, f);
    const auto w = ctx.wires(3, k, trial % 2 == 0);
    const double got = definitional_probability(single(k, gates::toffoli(), w), rho);
    ctx.tracker.check(
        std::abs(got - closed_form_toffoli(f[w[0] - 1], f[w[1] - 1], f[w[2] - 1])), ctx.tol(),
        "TOFFOLI closed form at " + placement(w));
  }
}

Circuit cnot_ladder_circuit() {
  Circuit c(3);
  c.add(gates::cnot(), {2, 3});
  c.add(gates::cnot(), {1, 2});
  c.add(gates::hadamard(), {3});
  return c;
}

void suite_cnot_ladder(Context& ctx) {
  const Circuit c = cnot_ladder_circuit();
  std::vector<BlochVector> f;
  for (int trial = 0; trial < 500; ++trial) {
    const auto rho = random_product_state(3, ctx.rng, f);
    const double got = definitional_probability(c, rho);
    const double closed = cnot_ladder_closed_form(f[0], f[1], f[2]);
    ctx.tracker.check(std::abs(got - closed), ctx.tol(), "CNOT ladder closed form");
    const double via_qcl =
        cnot_ladder_qcl_form(truth_probability(f[0]), truth_probability(f[1]), f[2].r1);
    ctx.tracker.check(std::abs(via_qcl - closed), kStructuralTol, "CNOT ladder QCL form identity");
  }
  ctx.tracker.require(circuit_target_profile(c).targets == WireSet{2, 3}, "CNOT ladder targets {2,3}");
}

void suite_identity_theorem(Context& ctx) {
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + trial % std::min(4, ctx.kmax());
    const auto rho = trial % 3 == 0 ? random_pure_state(k, ctx.rng) : random_density(k, ctx.rng);
    Circuit c(k);
    if (trial % 2) c.add(gates::identity(), {ctx.uniform(1, k)});
    ctx.tracker.check(std::abs(definitional_probability(c, rho) - 1.0), ctx.tol(),
                      "identity circuit probability");
  }
}

void suite_product_theorem(Context& ctx) {
  std::vector<BlochVector> f;
  const std::pair<GateSpec, ProductGateKind> cases[] = {
      {gates::swap(), ProductGateKind::Swap},
      {gates::sqrt_swap(), ProductGateKind::SqrtSwap},
      {gates::fredkin(), ProductGateKind::Fredkin}};
  for (const auto& [gate, kind] : cases) {
    for (int trial = 0; trial < 200; ++trial) {
      const int arity = gate.arity();
      const int k = ctx.uniform(arity, ctx.kmax());
      const auto rho = random_product_state(k, ctx.rng, f);
      const auto w = ctx.wires(arity, k, trial % 2 == 0);
      std::vector<BlochVector> local;
      for (int x : w) local.push_back(f[x - 1]);
      const double got = definitional_probability(single(k, gate, w), rho);
      ctx.tracker.check(std::abs(got - closed_form_products(kind, local)), ctx.tol(),
                        gate.name() + " product law at " + placement(w));
    }
  }
  const auto& p1 = structural().p1;
  for (int n = 1; n < ctx.kmax(); ++n) {
    const auto expected = kron(p1, lift_to_last(p1, n));
    ctx.tracker.check(max_abs_diff(lambda_binary(gates::swap(), n), expected), kStructuralTol,
                      "lambda(SWAP) = P1 (x) P1^(n)");
    ctx.tracker.check(max_abs_diff(lambda_binary(gates::sqrt_swap(), n), expected), kStructuralTol,
                      "lambda(SQRTSWAP) = P1 (x) P1^(n)");
  }
}


DensityOperator random_general_state(Context& ctx, int k, int trial) {
  return trial % 4 == 0 ? random_pure_state(k, ctx.rng) : random_density(k, ctx.rng);
}

void suite_lambda_binary(Context& ctx) {
  for (int k = 2; k <= ctx.kmax(); ++k) {
    for (int m = 1; m < k; ++m) {
      for (int s = m + 1; s <= k; ++s) {
        const int n = s - m;
        const GateSpec gs[] = {gates::swap(), gates::sqrt_swap(), random_gate(2, ctx.rng)};
        for (const auto& g : gs) {
          const auto lambda = lambda_binary(g, n);
          const Circuit c = single(k, g, {m, s});
          for (int trial = 0; trial < 100; ++trial) {
            const auto rho = random_general_state(ctx, k, trial);
            ctx.tracker.check(
                std::abs(lambda_probability(lambda, m, rho) - definitional_probability(c, rho)),
                ctx.tol(), "lambda_binary " + g.name() + " k=" + std::to_string(k) + " " +
                               placement(std::vector{m, s}));
          }
        }
      }
    }
  }
  bool rejected = false;
  try {
    (void)lambda_binary(gates::cnot(), 1);
  } catch (const ControlledFormError&) {
    rejected = true;
  }
  ctx.tracker.require(rejected, "lambda_binary rejects CNOT");
}

void suite_lambda_controlled(Context& ctx) {
  for (int k = 2; k <= ctx.kmax(); ++k) {
    for (int m = 1; m < k; ++m) {
      for (int s = m + 1; s <= k; ++s) {
        const int n = s - m;
        const GateSpec inners[] = {gates::not_gate(), gates::sqrt_not(), random_gate(1, ctx.rng)};
        for (const auto& v : inners) {
          const auto lambda = lambda_controlled(v, n);
          const Circuit c = single(k, controlled(v), {m, s});
          for (int trial = 0; trial < 100; ++trial) {
            const auto rho = random_general_state(ctx, k, trial);
            ctx.tracker.check(
                std::abs(lambda_probability(lambda, m, rho) - definitional_probability(c, rho)),
                ctx.tol(), "lambda_controlled " + v.name() + " k=" + std::to_string(k) + " " +
                               placement(std::vector{m, s}));
          }
        }
      }
    }
  }
}

void suite_lambda_fredkin(Context& ctx) {
  const auto form = ctx.config.fault == Fault::TransposedFredkinLambda
                        ? FredkinLambdaForm::TransposedDisplay
                        : FredkinLambdaForm::Derived;
  const GateSpec f = gates::fredkin();
  for (int k = 3; k <= ctx.kmax(); ++k) {
    for (int m = 1; m <= k; ++m) {
      for (int t1 = m + 1; t1 <= k; ++t1) {
        for (int t2 = t1 + 1; t2 <= k; ++t2) {
          const auto lambda = lambda_fredkin(t1 - m, t2 - t1, form);
          const Circuit c = single(k, f, {m, t1, t2});
          for (int trial = 0; trial < 100; ++trial) {
            const auto rho = random_general_state(ctx, k, trial);
            ctx.tracker.check(
                std::abs(lambda_probability(lambda, m, rho) - definitional_probability(c, rho)),
                ctx.tol(),
                "lambda_fredkin k=" + std::to_string(k) + " " + placement(std::vector{m, t1, t2}));
          }
        }
      }
    }
  }
}

/// Random circuit in which every step targets wire k and nothing else.
Circuit random_last_target_circuit(Context& ctx, int k) {
  Circuit c(k);
  const int steps = ctx.uniform(1, 4);
  for (int i = 0; i < steps; ++i) {
    const int choice = ctx.uniform(0, k >= 3 ? 3 : (k >= 2 ? 2 : 0));
    if (choice == 0) {
      const GateSpec unary[] = {gates::not_gate(), gates::hadamard(), gates::sqrt_not(),
                                random_gate(1, ctx.rng)};
      c.add(unary[ctx.uniform(0, 3)], {k});
    } else if (choice == 1) {
      c.add(gates::cnot(), {ctx.uniform(1, k - 1), k});
    } else if (choice == 2) {
      c.add(controlled(random_gate(1, ctx.rng)), {ctx.uniform(1, k - 1), k});
    } else {
      auto w = ctx.wires(2, k - 1, false);
      w.push_back(k);
      c.add(gates::toffoli(), w);
    }
  }
  return c;
}

void suite_one_target(Context& ctx) {
  for (int trial = 0; trial < 100; ++trial) {
    const int k = ctx.uniform(1, ctx.kmax());
    const Circuit c = random_last_target_circuit(ctx, k);
    ctx.tracker.require(circuit_target_profile(c).targets == WireSet{k}, "profile is {k}");
    const auto rho = random_general_state(ctx, k, trial);
    const double mt = definitional_probability(c, rho);
    const double qcl = qcl_probability(apply(c, rho));
    ctx.tracker.check(std::abs(mt - qcl), ctx.tol(), "one-target reduction k=" + std::to_string(k));
    if (trial < 20) {
      const auto report = crosscheck(c, rho);
      ctx.tracker.check(report.max_discrepancy, ctx.tol(), "crosscheck one-target circuit");
    }
  }
}

void suite_history(Context& ctx) {
  Circuit twice(2);
  twice.add(gates::hadamard(), {1});
  twice.add(gates::hadamard(), {1});
  Circuit idle(2);
  idle.add(gates::identity(), {1});
  auto& t = ctx.tracker;
  t.check(max_abs_diff(compose_unitary(twice), compose_unitary(idle)), kStructuralTol,
          "(H (x) I)(H (x) I) = I");
  const BlochVector w1{0.0, 0.0, 0.4};
  const BlochVector w2 = random_bloch(ctx.rng);
  const BlochVector fs[] = {w1, w2};
  const auto rho = product_state(fs);
  t.check(std::abs(definitional_probability(twice, rho) - 0.3), kStructuralTol,
          "H twice gives Tr((P1 (x) I) rho) = 0.3");
  t.check(std::abs(definitional_probability(idle, rho) - 1.0), kStructuralTol,
          "identity circuit gives 1");
  for (int trial = 0; trial < 50; ++trial) {
    const auto sigma = random_density(2, ctx.rng);
    const double expected = trace(matmul(kron(structural().p1, identity_qubits(1)), sigma.matrix())).real();
    t.check(std::abs(definitional_probability(twice, sigma) - expected), ctx.tol(),
            "H twice on general rho");
  }
}

void suite_and_law(Context& ctx) {
  Circuit c(3);
  c.add(gates::toffoli(), {1, 2, 3});
  for (int trial = 0; trial < 100; ++trial) {
    const BlochVector a = random_bloch(ctx.rng, trial % 2 == 0);
    const BlochVector b = random_bloch(ctx.rng);
    const BlochVector fs[] = {a, b, BlochVector{0.0, 0.0, 1.0}};
    const auto rho = product_state(fs);
    const double expected = truth_probability(a) * truth_probability(b);
    ctx.tracker.check(std::abs(qcl_probability(apply(c, rho)) - expected), ctx.tol(),
                      "p(AND(rho, sigma)) = p(rho) p(sigma)");
    ctx.tracker.check(std::abs(definitional_probability(c, rho) - expected), ctx.tol(),
                      "MT-QCL AND on P0 ancilla");
  }
}

void suite_placement(Context& ctx) {
  std::vector<BlochVector> f;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = ctx.uniform(3, std::max(3, ctx.kmax()));
    const auto rho = random_product_state(k, ctx.rng, f);
    const auto w = ctx.wires(2, k, true);
    const GateSpec g = trial % 2 ? gates::cnot() : random_gate(2, ctx.rng);
    // Move the factor of the second wire right next to the first.
    std::vector<BlochVector> moved = f;
    const BlochVector second = moved[w[1] - 1];
    moved.erase(moved.begin() + (w[1] - 1));
    moved.insert(moved.begin() + w[0], second);
    const double far = definitional_probability(single(k, g, w), rho);
    const double near = definitional_probability(single(k, g, {w[0], w[0] + 1}), product_state(moved));
    ctx.tracker.check(std::abs(far - near), ctx.tol(),
                      g.name() + " on " + placement(w) + " vs adjacent");
  }
}

Circuit random_circuit(Context& ctx, int k, int steps) {
  Circuit c(k);
  for (int i = 0; i < steps; ++i) {
    const int arity = ctx.uniform(1, std::min(3, k));
    const auto w = ctx.wires(arity, k, i % 2 == 0);
    GateSpec g = arity == 3 ? (ctx.uniform(0, 1) ? gates::fredkin() : random_gate(3, ctx.rng))
                            : random_gate(arity, ctx.rng);
    c.add(std::move(g), w);
  }
  return c;
}

void suite_circuit_properties(Context& ctx) {
  auto& t = ctx.tracker;
  for (int trial = 0; trial < 40; ++trial) {
    const int k = ctx.uniform(1, ctx.kmax());
    const Circuit c1 = random_circuit(ctx, k, ctx.uniform(1, 3));
    const Circuit c2 = random_circuit(ctx, k, ctx.uniform(1, 3));
    const auto u1 = compose_unitary(c1);
    const auto u2 = compose_unitary(c2);
    const auto both = compose_unitary(concatenate(c1, c2));
    t.check(max_abs_diff(both, matmul(u2, u1)), ctx.tol(), "concatenate composes");
    t.check(max_abs_diff(u1, compose_unitary_via_swap_chain(c1)), ctx.tol(),
            "composition matches swap-chain reference");
    t.check(unitarity_error(both), ctx.tol(), "composed circuit unitary");

    const auto rho = random_general_state(ctx, k, trial);
    const auto out = apply(c1, rho);
    t.require(validate_density(out).empty(), "apply preserves density invariants");

    const auto profile = circuit_target_profile(c1);
    const auto pi = truth_projector(k, profile.targets).matrix;
    t.check(max_abs_diff(matmul(pi, pi), pi), kStructuralTol, "projector idempotent");
    t.check(hermiticity_error(pi), kStructuralTol, "projector Hermitian");
    const double p = definitional_probability(c1, rho);
    t.require(p >= -ctx.tol() && p <= 1.0 + ctx.tol(), "probability within [0, 1]");
  }
}

using SuiteFn = void (*)(Context&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"linalg_algebra", suite_linalg},
      {"states", suite_states},
      {"swap_long", suite_swap_long},
      {"embed_binary", suite_embed_binary},
      {"fredkin_embedding", suite_fredkin_embedding},
      {"gate_library", suite_gate_library},
      {"closed_forms", suite_closed_forms},
      {"cnot_ladder", suite_cnot_ladder},
      {"identity_theorem", suite_identity_theorem},
      {"product_theorem", suite_product_theorem},
      {"lambda_binary", suite_lambda_binary},
      {"lambda_controlled", suite_lambda_controlled},
      {"lambda_fredkin", suite_lambda_fredkin},
      {"one_target_reduction", suite_one_target},
      {"history_dependence", suite_history},
      {"and_law", suite_and_law},
      {"placement_independence", suite_placement},
      {"circuit_properties", suite_circuit_properties},
  };
  return suites;
}

}  // namespace

std::optional<Fault> parse_fault(std::string_view name) {
  if (name.empty() || name == "none") return Fault::None;
  if (name == "transposed-fredkin-lambda") return Fault::TransposedFredkinLambda;
  return std::nullopt;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<SuiteResult> run_verification(const VerifyConfig& config) {
  if (config.kmax < 3) throw std::invalid_argument("kmax must be at least 3");
  for (const auto& name : config.only) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      throw std::invalid_argument("unknown suite '" + name + "'");
    }
  }
  std::vector<SuiteResult> results;
  for (const auto& [name, fn] : registry()) {
    if (!config.only.empty() &&
        std::find(config.only.begin(), config.only.end(), name) == config.only.end()) {
      continue;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(fnv1a(name)), static_cast<std::uint32_t>(fnv1a(name) >> 32)};
    Context ctx{config, Rng(seq), Tracker(name)};
    try {
      fn(ctx);
    } catch (const std::exception& e) {
      ctx.tracker.fail(std::string("exception: ") + e.what());
    }
    results.push_back(ctx.tracker.take());
  }
  return results;
}

}  // namespace mtqcl::cli
