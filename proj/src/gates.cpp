#include "mtqcl/gates.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace mtqcl {

namespace {

constexpr double kIdentifyTol = 1e-12;

ComplexMatrix permutation_matrix(std::size_t dim, std::size_t a, std::size_t b) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m(a, a) = 0.0;
  m(b, b) = 0.0;
  m(a, b) = 1.0;
  m(b, a) = 1.0;
  return m;
}

void check_wire_count(int k) {
  if (k < 1) throw std::out_of_range("wire count must be at least 1");
}

void check_span(int k, int m, int span_end, const char* op) {
  check_wire_count(k);
  if (!(1 <= m && m < span_end && span_end <= k)) {
    std::ostringstream os;
    os << op << ": need 1 <= m < span_end <= k, got k=" << k << " m=" << m
       << " span_end=" << span_end;
    throw std::out_of_range(os.str());
  }
}

}  // namespace

GateSpec::GateSpec(std::string name, ComplexMatrix matrix, double tol)
    : name_(std::move(name)), arity_(qubit_count(matrix.dim())), matrix_(std::move(matrix)) {
  if (arity_ < 1) throw DimensionError("gate '" + name_ + "' must act on at least one wire");
  const double err = unitarity_error(matrix_);
  if (err > tol) {
    std::ostringstream os;
    os << "gate '" << name_ << "' is not unitary (|U^dagger U - I| = " << err << ")";
    throw NonUnitaryGateError(os.str());
  }
}

const StructuralConstants& structural() {
  static const StructuralConstants kConstants{
      ComplexMatrix{{1, 0}, {0, 0}},
      ComplexMatrix{{0, 0}, {0, 1}},
      ComplexMatrix{{0, 1}, {0, 0}},
      ComplexMatrix{{0, 0}, {1, 0}},
  };
  return kConstants;
}

namespace gates {

GateSpec identity() { return GateSpec("I", ComplexMatrix::identity(2)); }

GateSpec not_gate() { return GateSpec("NOT", ComplexMatrix{{0, 1}, {1, 0}}); }

GateSpec hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return GateSpec("H", ComplexMatrix{{s, s}, {s, -s}});
}

GateSpec sqrt_not() {
  const Complex a(0.5, 0.5);
  const Complex b(0.5, -0.5);
  return GateSpec("SQRTNOT", ComplexMatrix{{a, b}, {b, a}});
}

GateSpec cnot() { return GateSpec("CNOT", permutation_matrix(4, 2, 3)); }

GateSpec toffoli() { return GateSpec("TOFFOLI", permutation_matrix(8, 6, 7)); }

GateSpec swap() { return GateSpec("SWAP", permutation_matrix(4, 1, 2)); }

GateSpec sqrt_swap() {
  const Complex a(0.5, 0.5);
  const Complex b(0.5, -0.5);
  return GateSpec("SQRTSWAP", ComplexMatrix{{1, 0, 0, 0}, {0, a, b, 0}, {0, b, a, 0}, {0, 0, 0, 1}});
}

GateSpec fredkin() { return GateSpec("FREDKIN", permutation_matrix(8, 5, 6)); }

}  // namespace gates

std::optional<LibraryGate> identify(const GateSpec& g) {
  static const std::array<std::pair<LibraryGate, GateSpec>, 9> kLibrary{{
      {LibraryGate::Identity, gates::identity()},
      {LibraryGate::Not, gates::not_gate()},
      {LibraryGate::Hadamard, gates::hadamard()},
      {LibraryGate::SqrtNot, gates::sqrt_not()},
      {LibraryGate::CNot, gates::cnot()},
      {LibraryGate::Toffoli, gates::toffoli()},
      {LibraryGate::Swap, gates::swap()},
      {LibraryGate::SqrtSwap, gates::sqrt_swap()},
      {LibraryGate::Fredkin, gates::fredkin()},
  }};
  for (const auto& [kind, spec] : kLibrary) {
    if (spec.arity() == g.arity() && approx_eq(spec.matrix(), g.matrix(), kIdentifyTol)) {
      return kind;
    }
  }
  return std::nullopt;
}

std::optional<GateSpec> library_gate(std::string_view name) {
  if (name == "I") return gates::identity();
  if (name == "NOT") return gates::not_gate();
  if (name == "H") return gates::hadamard();
  if (name == "SQRTNOT") return gates::sqrt_not();
  if (name == "CNOT") return gates::cnot();
  if (name == "TOFFOLI") return gates::toffoli();
  if (name == "SWAP") return gates::swap();
  if (name == "SQRTSWAP") return gates::sqrt_swap();
  if (name == "FREDKIN") return gates::fredkin();
  constexpr std::string_view kPrefix = "CONTROLLED(";
  if (name.starts_with(kPrefix) && name.ends_with(')')) {
    auto inner = library_gate(name.substr(kPrefix.size(), name.size() - kPrefix.size() - 1));
    if (inner) return controlled(*inner);
  }
  return std::nullopt;
}

GateSpec controlled(const GateSpec& u) {
  const auto& c = structural();
  const std::size_t d = u.matrix().dim();
  ComplexMatrix m = kron(c.p0, ComplexMatrix::identity(d)) + kron(c.p1, u.matrix());
  return GateSpec("CONTROLLED(" + u.name() + ")", std::move(m));
}

std::optional<ComplexMatrix> controlled_inner(const GateSpec& g, double tol) {
  if (g.arity() != 2) return std::nullopt;
  const auto& m = g.matrix();
  ComplexMatrix upper = sub_block(m, 2, 0, 0);
  if (!approx_eq(upper, ComplexMatrix::identity(2), tol)) return std::nullopt;
  const ComplexMatrix zero(2);
  if (!approx_eq(sub_block(m, 2, 0, 1), zero, tol) ||
      !approx_eq(sub_block(m, 2, 1, 0), zero, tol)) {
    return std::nullopt;
  }
  return sub_block(m, 2, 1, 1);
}

ComplexMatrix swap_long(int k, int m, int span_end) {
  check_span(k, m, span_end, "swap_long");
  const int n = span_end - m;
  const auto& c = structural();
  ComplexMatrix block = block_matrix(lift_to_last(c.p0, n), lift_to_last(c.l1, n),
                                     lift_to_last(c.l0, n), lift_to_last(c.p1, n));
  return kron_all({identity_qubits(m - 1), block, identity_qubits(k - span_end)});
}

ComplexMatrix adjacent_swap(int k, int i) {
  check_span(k, i, i + 1, "adjacent_swap");
  return kron_all({identity_qubits(i - 1), gates::swap().matrix(), identity_qubits(k - i - 1)});
}

ComplexMatrix adjacent_swap_chain(int k, int m, int span_end) {
  check_span(k, m, span_end, "adjacent_swap_chain");
  // Carry wire m right to span_end, then carry the displaced wire back to m.
  std::vector<int> sequence;
  for (int i = m; i < span_end; ++i) sequence.push_back(i);
  for (int i = span_end - 2; i >= m; --i) sequence.push_back(i);
  ComplexMatrix out = identity_qubits(k);
  for (int i : sequence) out = matmul(adjacent_swap(k, i), out);
  return out;
}

ComplexMatrix embed_unary(const GateSpec& u, int k, int i) {
  check_wire_count(k);
  if (u.arity() != 1) throw DimensionError("embed_unary: gate '" + u.name() + "' is not unary");
  if (i < 1 || i > k) {
    throw std::out_of_range("embed_unary: wire " + std::to_string(i) + " outside 1.." +
                            std::to_string(k));
  }
  return kron_all({identity_qubits(i - 1), u.matrix(), identity_qubits(k - i)});
}

ComplexMatrix embed_binary(const GateSpec& u, int k, int m, int span_end) {
  if (u.arity() != 2) throw DimensionError("embed_binary: gate '" + u.name() + "' is not binary");
  check_span(k, m, span_end, "embed_binary");
  const int n = span_end - m;
  const auto& mat = u.matrix();
  auto lifted = [&](std::size_t r, std::size_t c) {
    return lift_to_last(sub_block(mat, 2, r, c), n);
  };
  ComplexMatrix block = block_matrix(lifted(0, 0), lifted(0, 1), lifted(1, 0), lifted(1, 1));
  return kron_all({identity_qubits(m - 1), block, identity_qubits(k - span_end)});
}

ComplexMatrix embed_fredkin(int k, int m, int t1, int t2) {
  check_wire_count(k);
  if (!(1 <= m && m < t1 && t1 < t2 && t2 <= k)) {
    std::ostringstream os;
    os << "embed_fredkin: need 1 <= m < t1 < t2 <= k, got k=" << k << " m=" << m << " t1=" << t1
       << " t2=" << t2;
    throw std::out_of_range(os.str());
  }
  const int n = t1 - m;
  const int l = t2 - t1;
  const auto& c = structural();
  ComplexMatrix core =
      kron(c.p0, identity_qubits(n + l)) + kron(c.p1, swap_long(n + l, n, n + l));
  return kron_all({identity_qubits(m - 1), core, identity_qubits(k - t2)});
}

ComplexMatrix embed_via_swap_chain(const GateSpec& u, int k, std::span<const int> wires) {
  check_wire_count(k);
  const int arity = u.arity();
  if (static_cast<int>(wires.size()) != arity) {
    throw std::invalid_argument("embed_via_swap_chain: gate '" + u.name() + "' has arity " +
                                std::to_string(arity) + " but " + std::to_string(wires.size()) +
                                " wires were given");
  }
  for (std::size_t j = 0; j < wires.size(); ++j) {
    if (wires[j] < 1 || wires[j] > k) {
      throw std::out_of_range("embed_via_swap_chain: wire " + std::to_string(wires[j]) +
                              " outside 1.." + std::to_string(k));
    }
    if (j > 0 && wires[j] <= wires[j - 1]) {
      throw std::invalid_argument("embed_via_swap_chain: wires must be strictly increasing");
    }
  }

  const int last = wires.back();
  ComplexMatrix moves = identity_qubits(k);
  for (int j = arity - 2; j >= 0; --j) {
    const int destination = last - (arity - 1 - j);
    for (int pos = wires[j]; pos < destination; ++pos) moves = matmul(adjacent_swap(k, pos), moves);
  }
  const int first = last - arity + 1;
  ComplexMatrix local = kron_all({identity_qubits(first - 1), u.matrix(), identity_qubits(k - last)});
  return matmul(dagger(moves), matmul(local, moves));
}

}  // namespace mtqcl
