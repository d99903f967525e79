// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "mtqcl/circuits.hpp"
#include "mtqcl/cli/verify.hpp"
#include "mtqcl/gates.hpp"
#include "mtqcl/probability.hpp"
#include "mtqcl/sampling.hpp"

using namespace mtqcl;

namespace {

constexpr double kExact = 1e-12;
constexpr double kProb = 1e-9;

struct Outcome {
  bool passed = true;
  double worst = 0.0;
  long checks = 0;
  std::string detail;

  void check(double err, double tol, const std::string& what) {
    ++checks;
    worst = std::max(worst, std::isnan(err) ? INFINITY : err);
    if (!(err <= tol) && passed) {
      passed = false;
      char buf[64];
      std::snprintf(buf, sizeof(buf), " (error %.3e > %.0e)", err, tol);
      detail = what + buf;
    }
  }
  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

std::string where(int k, std::initializer_list<int> wires) {
  std::string s = "k=" + std::to_string(k) + " (";
  bool first = true;
  for (int w : wires) {
    s += (first ? "" : ",") + std::to_string(w);
    first = false;
  }
  return s + ")";
}

Circuit single(int k, const GateSpec& g, std::vector<int> wires) {
  Circuit c(k);
  c.add(g, std::move(wires));
  return c;
}

/// Strictly increasing wires in 1..k; alternates adjacent and spread layouts.
std::vector<int> pick_wires(Rng& rng, int count, int k, bool adjacent) {
  if (adjacent) {
    const int start = std::uniform_int_distribution<int>(1, k - count + 1)(rng);
    std::vector<int> w(count);
    for (int i = 0; i < count; ++i) w[i] = start + i;
    return w;
  }
  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i + 1;
  for (;;) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> w(all.begin(), all.begin() + count);
    std::sort(w.begin(), w.end());
    if (w.back() - w.front() > count - 1) return w;
  }
}

Outcome criterion1() {
  Outcome o;
  for (int k = 2; k <= 6; ++k) {
    for (int m = 1; m < k; ++m) {
      for (int s = m + 1; s <= k; ++s) {
        // Independent chain: bubble wire s down to m, then wire m's old bit back up.
        ComplexMatrix chain = identity_qubits(k);
        for (int i = s - 1; i >= m; --i) chain = matmul(testing::bit_swap(k, i, i + 1), chain);
        for (int i = m + 1; i < s; ++i) chain = matmul(testing::bit_swap(k, i, i + 1), chain);
        const auto block = swap_long(k, m, s);
        o.check(max_abs_diff(block, chain), kExact, "swap_long vs adjacent chain " + where(k, {m, s}));
        o.check(max_abs_diff(matmul(block, block), identity_qubits(k)), kExact,
                "swap_long self-inverse " + where(k, {m, s}));
      }
    }
  }
  return o;
}

Outcome criterion2(Rng& rng) {
  Outcome o;
  for (int trial = 0; trial < 50; ++trial) {
    const GateSpec u = random_gate(2, rng);
    for (int k = 2; k <= 6; ++k) {
      for (int m = 1; m < k; ++m) {
        for (int s = m + 1; s <= k; ++s) {
          const int wires[] = {m, s};
          const auto block = embed_binary(u, k, m, s);
          o.check(max_abs_diff(block, embed_via_swap_chain(u, k, wires)), kExact,
                  "embed_binary vs swap chain " + where(k, {m, s}));
          if (trial < 5) {
            o.check(max_abs_diff(block, testing::index_embedding(u.matrix(), k, {m, s})), kExact,
                    "embed_binary vs index oracle " + where(k, {m, s}));
          }
        }
      }
    }
  }
  return o;
}

Outcome criterion3(Rng& rng) {
  Outcome o;
  std::vector<BlochVector> f;
  struct Unary {
    GateSpec gate;
    std::function<double(const BlochVector&)> expected;
  };
  const Unary unary[] = {
      {gates::not_gate(), [](const BlochVector& b) { return (1 + b.r3) / 2; }},
      {gates::hadamard(), [](const BlochVector& b) { return (1 - b.r1) / 2; }},
      {gates::sqrt_not(), [](const BlochVector& b) { return (1 - b.r2) / 2; }},
  };
  for (const auto& [gate, expected] : unary) {
    for (int i = 0; i < 500; ++i) {
      const int k = 1 + i % 5;
      const auto rho = random_product_state(k, rng, f);
      const int w = std::uniform_int_distribution<int>(1, k)(rng);
      const double p = definitional_probability(single(k, gate, {w}), rho);
      o.check(std::abs(p - expected(f[w - 1])), kProb, gate.name() + " at " + where(k, {w}));
    }
  }
  for (int i = 0; i < 500; ++i) {
    const int k = 2 + i % 4;
    const auto rho = random_product_state(k, rng, f);
    const auto w = pick_wires(rng, 2, k, i % 2 == 0 || k == 2);
    const double expected = (1 - f[w[0] - 1].r3 * f[w[1] - 1].r3) / 2;
    o.check(std::abs(definitional_probability(single(k, gates::cnot(), w), rho) - expected), kProb,
            "CNOT at " + where(k, {w[0], w[1]}));
  }
  for (int i = 0; i < 500; ++i) {
    const int k = 3 + i % 3;
    const auto rho = random_product_state(k, rng, f);
    const auto w = pick_wires(rng, 3, k, i % 2 == 0 || k == 3);
    const double r = f[w[0] - 1].r3, s = f[w[1] - 1].r3, t = f[w[2] - 1].r3;
    const double expected = 0.25 * (2 + (r * (s - 1) - s - 1) * t);
    o.check(std::abs(definitional_probability(single(k, gates::toffoli(), w), rho) - expected), kProb,
            "TOFFOLI at " + where(k, {w[0], w[1], w[2]}));
  }
  return o;
}

Outcome criterion4(Rng& rng) {
  Outcome o;
  Circuit c(3);
  c.add(gates::cnot(), {2, 3});
  c.add(gates::cnot(), {1, 2});
  c.add(gates::hadamard(), {3});
  std::vector<BlochVector> f;
  for (int i = 0; i < 500; ++i) {
    const auto rho = random_product_state(3, rng, f);
    const double simplified = 0.25 * (1 - f[0].r3 * f[1].r3) * (1 - f[2].r1);
    const double p_rho = (1 - f[0].r3) / 2, p_sigma = (1 - f[1].r3) / 2;
    const double qcl_form = 0.25 * ((1 - 2 * p_rho) * (1 - 2 * p_sigma) - 1) * (f[2].r1 - 1);
    o.check(std::abs(definitional_probability(c, rho) - simplified), kProb, "CNOT ladder trace");
    o.check(std::abs(simplified - qcl_form), kExact, "simplified vs QCL form");
    o.check(std::abs(cnot_ladder_closed_form(f[0], f[1], f[2]) - simplified), kExact,
            "library closed form");
  }
  return o;
}

Outcome criterion5(Rng& rng) {
  Outcome o;
  for (int i = 0; i < 100; ++i) {
    const int k = 1 + i % 4;
    const auto rho = i % 3 == 0 ? random_pure_state(k, rng) : random_density(k, rng);
    Circuit c(k);
    if (i % 2) c.add(gates::identity(), {k});
    o.check(std::abs(definitional_probability(c, rho) - 1.0), kProb, "identity circuit k=" + std::to_string(k));
    o.check(std::abs(mtqcl_probability(c, rho).value() - 1.0), kProb, "mtqcl report");
  }
  return o;
}

Outcome criterion6(Rng& rng) {
  Outcome o;
  auto truth = [](const BlochVector& b) { return (1 - b.r3) / 2; };
  std::vector<BlochVector> f;
  for (const auto& g : {gates::swap(), gates::sqrt_swap(), gates::fredkin()}) {
    for (int i = 0; i < 200; ++i) {
      const int k = g.arity() + i % (6 - g.arity());
      const auto rho = random_product_state(k, rng, f);
      const auto w = pick_wires(rng, g.arity(), k, i % 2 == 0 || k == g.arity());
      const double expected = g.arity() == 2 ? truth(f[w[0] - 1]) * truth(f[w[1] - 1])
                                             : truth(f[w[1] - 1]) * truth(f[w[2] - 1]);
      o.check(std::abs(definitional_probability(single(k, g, w), rho) - expected), kProb,
              g.name() + " product law");
    }
  }
  const auto& p1 = structural().p1;
  for (int n = 1; n <= 4; ++n) {
    const auto expected = kron(p1, lift_to_last(p1, n));
    o.check(max_abs_diff(lambda_binary(gates::swap(), n), expected), kExact, "lambda(SWAP)");
    o.check(max_abs_diff(lambda_binary(gates::sqrt_swap(), n), expected), kExact, "lambda(SQRTSWAP)");
  }
  return o;
}

DensityOperator general_state(Rng& rng, int k, int i) {
  return i % 4 == 0 ? random_pure_state(k, rng) : random_density(k, rng);
}

Outcome criterion7(Rng& rng, FredkinLambdaForm form, bool include_binary) {
  Outcome o;
  for (int k = 2; k <= 5 && include_binary; ++k) {
    for (int m = 1; m < k; ++m) {
      for (int s = m + 1; s <= k; ++s) {
        const GateSpec u = random_gate(2, rng);
        const GateSpec v = random_gate(1, rng);
        const auto lb = lambda_binary(u, s - m);
        const auto lc = lambda_controlled(v, s - m);
        const Circuit cu = single(k, u, {m, s});
        const Circuit cv = single(k, controlled(v), {m, s});
        for (int i = 0; i < 100; ++i) {
          const auto rho = general_state(rng, k, i);
          o.check(std::abs(lambda_probability(lb, m, rho) - definitional_probability(cu, rho)), kProb,
                  "lambda_binary " + where(k, {m, s}));
          o.check(std::abs(lambda_probability(lc, m, rho) - definitional_probability(cv, rho)), kProb,
                  "lambda_controlled " + where(k, {m, s}));
        }
      }
    }
  }
  for (int k = 3; k <= 5; ++k) {
    for (int m = 1; m <= k; ++m) {
      for (int t1 = m + 1; t1 <= k; ++t1) {
        for (int t2 = t1 + 1; t2 <= k; ++t2) {
          const auto lf = lambda_fredkin(t1 - m, t2 - t1, form);
          const Circuit cf = single(k, gates::fredkin(), {m, t1, t2});
          for (int i = 0; i < 100; ++i) {
            const auto rho = general_state(rng, k, i);
            o.check(std::abs(lambda_probability(lf, m, rho) - definitional_probability(cf, rho)), kProb,
                    "lambda_fredkin " + where(k, {m, t1, t2}));
          }
        }
      }
    }
  }
  return o;
}

Outcome criterion8(Rng& rng) {
  Outcome o;
  for (int i = 0; i < 100; ++i) {
    const int k = 1 + i % 5;
    Circuit c(k);
    const int steps = 1 + i % 4;
    for (int s = 0; s < steps; ++s) {
      const int kind = k == 1 ? 0 : (s + i) % (k >= 3 ? 4 : 3);
      const int ctrl = k > 1 ? std::uniform_int_distribution<int>(1, k - 1)(rng) : 0;
      switch (kind) {
        case 0: c.add(random_gate(1, rng), {k}); break;
        case 1: c.add(gates::cnot(), {ctrl, k}); break;
        case 2: c.add(controlled(random_gate(1, rng)), {ctrl, k}); break;
        default: {
          auto w = pick_wires(rng, 2, k - 1, k == 3);
          w.push_back(k);
          c.add(gates::toffoli(), w);
        }
      }
    }
    o.require(circuit_target_profile(c).targets == WireSet{k}, "target profile is {k}");
    const auto rho = general_state(rng, k, i);
    o.check(std::abs(mtqcl_probability(c, rho).value() - qcl_probability(apply(c, rho))), kProb,
            "one-target reduction k=" + std::to_string(k));
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  Circuit u1(2);
  u1.add(gates::hadamard(), {1});
  u1.add(gates::hadamard(), {1});
  const Circuit u2(2);
  o.check(max_abs_diff(compose_unitary(u1), compose_unitary(u2)), kExact, "identical composed unitaries");
  const BlochVector states[][2] = {{{0, 0, 0.4}, {0, 0, 0}}, {{0.6, 0.2, 0.4}, {0.1, -0.3, 0.5}}};
  for (const auto& fs : states) {
    const auto rho = product_state(fs);
    o.check(std::abs(mtqcl_probability(u1, rho).value() - 0.3), kExact, "U1 gives 0.3");
    o.check(std::abs(mtqcl_probability(u2, rho).value() - 1.0), kExact, "U2 gives 1.0");
  }
  return o;
}

Outcome criterion10(Rng& rng) {
  Outcome o;
  const Circuit c = single(3, gates::toffoli(), {1, 2, 3});
  for (int i = 0; i < 100; ++i) {
    const BlochVector fs[] = {random_bloch(rng, i % 2 == 0), random_bloch(rng), {0, 0, 1}};
    const double expected = (1 - fs[0].r3) / 2 * (1 - fs[1].r3) / 2;
    o.check(std::abs(qcl_probability(apply(c, product_state(fs))) - expected), kProb, "AND law");
  }
  return o;
}

Outcome criterion11(Rng& rng) {
  Outcome o;
  // The transposed form must fail the Fredkin lambda suite...
  cli::VerifyConfig config;
  config.fault = cli::Fault::TransposedFredkinLambda;
  config.only = {"lambda_fredkin"};
  const auto faulty = cli::run_verification(config);
  o.require(faulty.size() == 1 && !faulty[0].passed, "fault not detected by the lambda_fredkin suite");
  config.fault = cli::Fault::None;
  const auto clean = cli::run_verification(config);
  o.require(clean.size() == 1 && clean[0].passed, "clean lambda_fredkin suite fails");
  // ...and the discrepancy must come from placements with n != l only.
  for (int n = 1; n <= 3; ++n) {
    for (int l = 1; l <= 3; ++l) {
      const Outcome direct = [&] {
        Outcome d;
        const int k = 1 + n + l;
        const auto lf = lambda_fredkin(n, l, FredkinLambdaForm::TransposedDisplay);
        const Circuit cf = single(k, gates::fredkin(), {1, 1 + n, 1 + n + l});
        for (int i = 0; i < 20; ++i) {
          const auto rho = general_state(rng, k, i);
          d.check(std::abs(lambda_probability(lf, 1, rho) - definitional_probability(cf, rho)), kProb, "");
        }
        return d;
      }();
      o.require(direct.passed == (n == l), "transposed form n=" + std::to_string(n) + " l=" +
                                               std::to_string(l) + (n == l ? " wrongly flagged" : " missed"));
    }
  }
  return o;
}

}  // namespace

int main() {
  Rng rng(20240101);
  struct Criterion {
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"C1  swap_long equals adjacent-swap chain, self-inverse (k<=6, 1e-12)", [] { return criterion1(); }},
      {"C2  embed_binary equals swap-chain embedding (50 unitaries, k<=6, 1e-12)", [&] { return criterion2(rng); }},
      {"C3  closed forms NOT/H/SQRTNOT/CNOT/TOFFOLI (500 each, 1e-9)", [&] { return criterion3(rng); }},
      {"C4  CNOT ladder closed form and QCL form (500, 1e-9)", [&] { return criterion4(rng); }},
      {"C5  identity circuit probability is 1 (100, k<=4, 1e-9)", [&] { return criterion5(rng); }},
      {"C6  SWAP/SQRTSWAP/FREDKIN product law (200 each) and lambda(SWAP)=lambda(SQRTSWAP)",
       [&] { return criterion6(rng); }},
      {"C7  lambda evaluators vs definitional on entangled states (100/config, k<=5, 1e-9)",
       [&] { return criterion7(rng, FredkinLambdaForm::Derived, true); }},
      {"C8  one-target circuits reduce to QCL (100, 1e-9)", [&] { return criterion8(rng); }},
      {"C9  history dependence 0.3 vs 1.0 with identical unitaries (1e-12)", [] { return criterion9(); }},
      {"C10 AND law p(T(rho,sigma,P0)) = p(rho)p(sigma) (100, 1e-9)", [&] { return criterion10(rng); }},
      {"C11 transposed Fredkin lambda detected for n != l", [&] { return criterion11(rng); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const Outcome o = c.run();
    std::printf("[%s] %s  worst=%.3e checks=%ld\n", o.passed ? "PASS" : "FAIL", c.label, o.worst, o.checks);
    if (!o.passed) {
      std::printf("       %s\n", o.detail.c_str());
      ++failed;
    }
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
