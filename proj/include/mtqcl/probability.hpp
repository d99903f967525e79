#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtqcl/circuits.hpp"
#include "mtqcl/gates.hpp"
#include "mtqcl/linalg.hpp"
#include "mtqcl/states.hpp"

namespace mtqcl {

/// Standard QCL truth probability: Tr((I^{(n-1)} (x) P1) rho).
double qcl_probability(const DensityOperator& rho);

/// Tr(P1 rho) of a single qubit, (1 - r3) / 2.
double truth_probability(const BlochVector& b);

enum class FactorTag { Identity, P1 };

/// Kronecker product of P1 on target wires and I elsewhere.
struct TruthProjector {
  ComplexMatrix matrix;
  std::vector<FactorTag> factor_tags;
};

TruthProjector truth_projector(int num_wires, const WireSet& targets);

// Evaluator names used as keys in ProbabilityReport::value_by_evaluator.
namespace evaluator {
inline constexpr const char* kDefinitional = "definitional";
inline constexpr const char* kHeisenberg = "heisenberg";
inline constexpr const char* kIdentityTheorem = "identity_theorem";
inline constexpr const char* kQclOneTarget = "qcl_one_target";
inline constexpr const char* kClosedFormSingle = "closed_form_single";
inline constexpr const char* kClosedFormCnot = "closed_form_cnot";
inline constexpr const char* kClosedFormToffoli = "closed_form_toffoli";
inline constexpr const char* kClosedFormProduct = "closed_form_product";
inline constexpr const char* kClosedFormCnotLadder = "closed_form_cnot_ladder";
inline constexpr const char* kLambdaBinary = "lambda_binary";
inline constexpr const char* kLambdaControlled = "lambda_controlled";
inline constexpr const char* kLambdaFredkin = "lambda_fredkin";
}  // namespace evaluator

/// How lambda_fredkin is built. `Derived` conjugates the truth projector
/// through the controlled-swap decomposition. `TransposedDisplay` is the
/// alternative P0 (x) P1^(n) (x) P1^(l) + P1 (x) P1^(l) (x) P1^(n), which
/// only agrees with it when n == l; it exists to check that the oracle
/// can tell the two apart.
enum class FredkinLambdaForm { Derived, TransposedDisplay };

struct EvaluationOptions {
  double tol = kDefaultTol;
  int cap = kDefaultWireCap;
  FredkinLambdaForm fredkin_form = FredkinLambdaForm::Derived;
};

struct ProbabilityReport {
  /// Raw values; tiny negative residue is kept here and clamped only for display.
  std::map<std::string, double> value_by_evaluator;
  /// Largest pairwise difference between evaluators.
  double max_discrepancy = 0.0;
  TargetProfile target_profile;

  /// The definitional value.
  [[nodiscard]] double value() const;
  [[nodiscard]] bool consistent(double tol = kDefaultTol) const { return max_discrepancy <= tol; }
};

/// Clamps residue in [-1e-9, 0) to 0 and (1, 1 + 1e-9] to 1.
double display_value(double raw);

/// Tr(Pi U rho U^dagger) with Pi from the circuit's target profile.
double definitional_probability(const Circuit& c, const DensityOperator& rho,
                                const EvaluationOptions& opts = {});

/// MT-QCL probability: the definitional value plus every closed form that
/// applies. `factors` are the per-wire Bloch vectors when rho is a product
/// state (empty when unknown); closed forms need them.
ProbabilityReport mtqcl_probability(const Circuit& c, const DensityOperator& rho,
                                    std::span<const BlochVector> factors = {},
                                    const EvaluationOptions& opts = {});

/// Everything mtqcl_probability runs, plus the Heisenberg-picture trace,
/// the one-target QCL reduction and the lambda pull-back evaluators.
ProbabilityReport crosscheck(const Circuit& c, const DensityOperator& rho,
                             std::span<const BlochVector> factors = {},
                             const EvaluationOptions& opts = {});

// Closed forms for single gates on product states.

enum class SingleGateKind { Not, SqrtI, SqrtNot };
enum class ProductGateKind { Swap, SqrtSwap, Fredkin };

double closed_form_single(SingleGateKind kind, const BlochVector& b);
double closed_form_cnot(const BlochVector& control, const BlochVector& target);
double closed_form_toffoli(const BlochVector& c1, const BlochVector& c2, const BlochVector& t);
/// Product of truth probabilities over the gate's target wires. Needs 2
/// Bloch vectors for Swap/SqrtSwap and 3 for Fredkin.
double closed_form_products(ProductGateKind kind, std::span<const BlochVector> blochs);

/// (CNOT (x) H)(I (x) CNOT) on rho (x) sigma (x) tau: 1/4 (1 - r3 s3)(1 - t1).
double cnot_ladder_closed_form(const BlochVector& rho, const BlochVector& sigma,
                               const BlochVector& tau);
/// The same quantity in terms of QCL probabilities: 1/4 [(1-2p)(1-2q) - 1](t1 - 1).
double cnot_ladder_qcl_form(double p_rho, double p_sigma, double t1);

// Pull-back projectors U^dagger Pi U on the span of a placed gate.

class ControlledFormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lambda for a binary gate whose two wires are both targets, on span n+1:
/// blocks I^{(n-1)} (x) (U2i^dagger P1 U2j). Throws ControlledFormError for
/// [[I, 0], [0, V]] gates and std::invalid_argument for other gates that do
/// not target both wires.
ComplexMatrix lambda_binary(const GateSpec& u, int n);

/// Lambda for a controlled unary gate on span n+1: [[P1^(n), 0], [0, I^{(n-1)} (x) V^dagger P1 V]].
ComplexMatrix lambda_controlled(const GateSpec& inner, int n);

/// Lambda for Fredkin with control at 1 and targets at 1+n, 1+n+l.
ComplexMatrix lambda_fredkin(int n, int l, FredkinLambdaForm form = FredkinLambdaForm::Derived);

/// I^{(m-1)} (x) lambda (x) I^{(k-...)}.
ComplexMatrix extend_lambda(const ComplexMatrix& lambda, int num_wires, int m);

/// Tr(extend_lambda(lambda, k, m) rho).
double lambda_probability(const ComplexMatrix& lambda, int m, const DensityOperator& rho);

}  // namespace mtqcl
