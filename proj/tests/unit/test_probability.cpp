#include <gtest/gtest.h>

#include <cmath>

#include "mtqcl/probability.hpp"
#include "mtqcl/sampling.hpp"

using namespace mtqcl;

namespace {

DensityOperator product(std::initializer_list<BlochVector> fs) {
  std::vector<BlochVector> v(fs);
  return product_state(v);
}

Circuit single(int k, const GateSpec& g, std::vector<int> wires) {
  Circuit c(k);
  c.add(g, std::move(wires));
  return c;
}

Circuit cnot_ladder() {
  Circuit c(3);
  c.add(gates::cnot(), {2, 3});
  c.add(gates::cnot(), {1, 2});
  c.add(gates::hadamard(), {3});
  return c;
}

/// Independent brute-force value: sum of diagonal entries of U rho U^dagger
/// whose index has a 1 on every target wire.
double brute_force(const Circuit& c, const DensityOperator& rho) {
  const int k = c.num_wires();
  const auto out = apply(c, rho).matrix();
  const auto targets = circuit_target_profile(c).targets;
  double p = 0.0;
  for (std::size_t x = 0; x < out.dim(); ++x) {
    bool all_true = true;
    for (int w : targets) all_true = all_true && ((x >> (k - w)) & 1U);
    if (all_true) p += out(x, x).real();
  }
  return p;
}

}  // namespace

TEST(QclProbability, Examples) {
  EXPECT_DOUBLE_EQ(qcl_probability(basis_register(std::vector{1})), 1.0);
  EXPECT_DOUBLE_EQ(qcl_probability(basis_register(std::vector{1, 0})), 0.0);
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const auto b = random_bloch(rng);
    EXPECT_NEAR(qcl_probability(bloch_to_density(b)), 0.5 * (1 - b.r3), 1e-15);
  }
}

TEST(TruthProjector, Examples) {
  EXPECT_EQ(truth_projector(2, {}).matrix, identity_qubits(2));
  const Complex d[] = {0, 0, 0, 1};
  EXPECT_EQ(truth_projector(2, {1, 2}).matrix, ComplexMatrix::diagonal(d));
  const auto& p1 = structural().p1;
  const auto t = truth_projector(3, {2, 3});
  EXPECT_EQ(t.matrix, kron_all({identity_qubits(1), p1, p1}));
  EXPECT_EQ(t.factor_tags, (std::vector{FactorTag::Identity, FactorTag::P1, FactorTag::P1}));
}

TEST(Definitional, IdentityCircuitIsOne) {
  Rng rng(42);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_NEAR(definitional_probability(Circuit(k), random_density(k, rng)), 1.0, 1e-12);
  }
}

TEST(Definitional, MatchesBruteForce) {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c(4);
    c.add(random_gate(2, rng), {1, 3});
    c.add(gates::toffoli(), {2, 3, 4});
    const auto rho = random_density(4, rng);
    EXPECT_NEAR(definitional_probability(c, rho), brute_force(c, rho), 1e-12);
  }
}

TEST(CnotLadder, ClosedFormAndQclFormAgree) {
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    const auto r = random_bloch(rng), s = random_bloch(rng), t = random_bloch(rng);
    const double closed = cnot_ladder_closed_form(r, s, t);
    EXPECT_NEAR(closed, 0.25 * (1 - r.r3 * s.r3) * (1 - t.r1), 1e-15);
    EXPECT_NEAR(cnot_ladder_qcl_form(truth_probability(r), truth_probability(s), t.r1), closed, 1e-14);
    EXPECT_NEAR(definitional_probability(cnot_ladder(), product({r, s, t})), closed, 1e-12);
  }
}

TEST(CnotLadder, MaximallyMixedIsQuarter) {
  const auto report = mtqcl_probability(cnot_ladder(), product({{}, {}, {}}),
                                        std::vector<BlochVector>(3));
  EXPECT_NEAR(report.value(), 0.25, 1e-15);
  EXPECT_TRUE(report.value_by_evaluator.contains(evaluator::kClosedFormCnotLadder));
}

TEST(HadamardTwice, HistoryDependence) {
  Circuit twice(2);
  twice.add(gates::hadamard(), {1});
  twice.add(gates::hadamard(), {1});
  const auto rho = product({{0, 0, 0.4}, {0.3, 0, 0}});
  EXPECT_NEAR(definitional_probability(twice, rho), 0.3, 1e-12);
  EXPECT_NEAR(definitional_probability(Circuit(2), rho), 1.0, 1e-12);
}

TEST(ClosedForms, SingleGateExamples) {
  EXPECT_DOUBLE_EQ(closed_form_single(SingleGateKind::Not, {0, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(closed_form_single(SingleGateKind::SqrtI, {1, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(closed_form_single(SingleGateKind::SqrtNot, {0, 0, 0}), 0.5);
}

TEST(ClosedForms, CnotExamples) {
  EXPECT_DOUBLE_EQ(closed_form_cnot({0, 0, 1}, {0, 0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(closed_form_cnot({0, 0, -1}, {0, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(closed_form_cnot({0.2, 0.1, 0}, {0, 0, 0.7}), 0.5);
}

TEST(ClosedForms, ToffoliExamples) {
  EXPECT_DOUBLE_EQ(closed_form_toffoli({0, 0, 1}, {0, 0, 1}, {0, 0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(closed_form_toffoli({0, 0, -1}, {0, 0, -1}, {0, 0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(closed_form_toffoli({0, 0, 0.3}, {0.1, 0, -0.6}, {0.5, 0, 0}), 0.5);
}

TEST(ClosedForms, ProductExamples) {
  const BlochVector one{0, 0, -1}, zero{0, 0, 1}, mixed{};
  const BlochVector st[] = {one, one};
  EXPECT_DOUBLE_EQ(closed_form_products(ProductGateKind::Swap, st), 1.0);
  const BlochVector fr[] = {{0.3, 0.3, 0.3}, one, zero};
  EXPECT_DOUBLE_EQ(closed_form_products(ProductGateKind::Fredkin, fr), 0.0);
  const BlochVector mm[] = {mixed, mixed};
  EXPECT_DOUBLE_EQ(closed_form_products(ProductGateKind::SqrtSwap, mm), 0.25);
  EXPECT_THROW(closed_form_products(ProductGateKind::Fredkin, mm), std::invalid_argument);
}

TEST(ClosedForms, AgreeWithDefinitionalAtFarPlacements) {
  Rng rng(45);
  std::vector<BlochVector> f;
  for (int i = 0; i < 50; ++i) {
    const auto rho = random_product_state(5, rng, f);
    EXPECT_NEAR(definitional_probability(single(5, gates::cnot(), {1, 4}), rho),
                closed_form_cnot(f[0], f[3]), 1e-12);
    EXPECT_NEAR(definitional_probability(single(5, gates::toffoli(), {1, 3, 5}), rho),
                closed_form_toffoli(f[0], f[2], f[4]), 1e-12);
    EXPECT_NEAR(definitional_probability(single(5, gates::sqrt_not(), {4}), rho),
                closed_form_single(SingleGateKind::SqrtNot, f[3]), 1e-12);
  }
}

TEST(Lambda, BinaryExamples) {
  const auto& p1 = structural().p1;
  EXPECT_LE(max_abs_diff(lambda_binary(gates::swap(), 1), kron(p1, p1)), 1e-12);
  EXPECT_LE(max_abs_diff(lambda_binary(gates::sqrt_swap(), 1), kron(p1, p1)), 1e-12);
  EXPECT_LE(max_abs_diff(lambda_binary(gates::sqrt_swap(), 3), kron(p1, lift_to_last(p1, 3))), 1e-12);
}

TEST(Lambda, BinaryRejectsControlledForm) {
  EXPECT_THROW(lambda_binary(gates::cnot(), 1), ControlledFormError);
  const Complex d[] = {1, 1, 1, Complex{0, 1}};
  EXPECT_THROW(lambda_binary(GateSpec("CS", ComplexMatrix::diagonal(d)), 1), std::invalid_argument);
}

TEST(Lambda, ControlledExamples) {
  const auto& c = structural();
  const ComplexMatrix zero(2);
  EXPECT_LE(max_abs_diff(lambda_controlled(gates::not_gate(), 1), block_matrix(c.p1, zero, zero, c.p0)),
            1e-12);
  EXPECT_LE(max_abs_diff(lambda_controlled(gates::identity(), 1), kron(identity_qubits(1), c.p1)), 1e-12);
}

TEST(Lambda, FredkinAdjacent) {
  const auto& p1 = structural().p1;
  EXPECT_LE(max_abs_diff(lambda_fredkin(1, 1), kron_all({identity_qubits(1), p1, p1})), 1e-12);
}

TEST(Lambda, FredkinTransposedFormOnlyAgreesWhenSpansMatch) {
  EXPECT_LE(max_abs_diff(lambda_fredkin(2, 2), lambda_fredkin(2, 2, FredkinLambdaForm::TransposedDisplay)),
            1e-12);
  EXPECT_GT(max_abs_diff(lambda_fredkin(1, 2), lambda_fredkin(1, 2, FredkinLambdaForm::TransposedDisplay)),
            0.5);
}

TEST(Lambda, AgreesWithDefinitionalOnEntangledStates) {
  Rng rng(46);
  for (int i = 0; i < 30; ++i) {
    const auto rho = random_density(4, rng);
    const auto v = random_gate(1, rng);
    EXPECT_NEAR(lambda_probability(lambda_controlled(v, 2), 2, rho),
                definitional_probability(single(4, controlled(v), {2, 4}), rho), 1e-12);
    EXPECT_NEAR(lambda_probability(lambda_fredkin(2, 1), 1, rho),
                definitional_probability(single(4, gates::fredkin(), {1, 3, 4}), rho), 1e-12);
    const auto u = random_gate(2, rng);
    EXPECT_NEAR(lambda_probability(lambda_binary(u, 3), 1, rho),
                definitional_probability(single(4, u, {1, 4}), rho), 1e-12);
  }
}

TEST(Crosscheck, CnotFarPlacement) {
  Rng rng(47);
  std::vector<BlochVector> f;
  const auto rho = random_product_state(3, rng, f);
  const auto report = crosscheck(single(3, gates::cnot(), {1, 3}), rho, f);
  for (const char* name : {evaluator::kDefinitional, evaluator::kClosedFormCnot,
                           evaluator::kLambdaControlled, evaluator::kQclOneTarget}) {
    EXPECT_TRUE(report.value_by_evaluator.contains(name)) << name;
  }
  EXPECT_LT(report.max_discrepancy, 1e-9);
}

TEST(Crosscheck, SwapAndSqrtSwapAgree) {
  Rng rng(48);
  const auto rho = random_density(2, rng);
  EXPECT_NEAR(crosscheck(single(2, gates::swap(), {1, 2}), rho).value(),
              crosscheck(single(2, gates::sqrt_swap(), {1, 2}), rho).value(), 1e-12);
}

TEST(Crosscheck, DeclaredTargetsSkipStructuralClosedForms) {
  Rng rng(49);
  std::vector<BlochVector> f;
  const auto rho = random_product_state(2, rng, f);
  Circuit c(2);
  c.add(gates::cnot(), {1, 2}, WireSet{1, 2});
  const auto report = crosscheck(c, rho, f);
  EXPECT_FALSE(report.value_by_evaluator.contains(evaluator::kClosedFormCnot));
  EXPECT_LT(report.max_discrepancy, 1e-9);
}

TEST(Crosscheck, OneTargetReduction) {
  Rng rng(50);
  for (int i = 0; i < 20; ++i) {
    Circuit c(3);
    c.add(gates::toffoli(), {1, 2, 3});
    c.add(controlled(random_gate(1, rng)), {2, 3});
    const auto rho = random_density(3, rng);
    EXPECT_NEAR(definitional_probability(c, rho), qcl_probability(apply(c, rho)), 1e-12);
  }
}

TEST(DisplayValue, ClampsResidueOnly) {
  EXPECT_EQ(display_value(-1e-12), 0.0);
  EXPECT_EQ(display_value(1 + 1e-12), 1.0);
  EXPECT_EQ(display_value(0.4), 0.4);
  EXPECT_EQ(display_value(-1e-6), -1e-6);
}

TEST(AndLaw, ToffoliOnFalseAncilla) {
  Rng rng(51);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_bloch(rng), b = random_bloch(rng);
    const auto rho = product({a, b, {0, 0, 1}});
    EXPECT_NEAR(qcl_probability(apply(single(3, gates::toffoli(), {1, 2, 3}), rho)),
                truth_probability(a) * truth_probability(b), 1e-12);
  }
}
