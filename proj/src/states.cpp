#include "mtqcl/states.hpp"

#include <cmath>
#include <sstream>

namespace mtqcl {

double BlochVector::norm() const { return std::sqrt(r1 * r1 + r2 * r2 + r3 * r3); }

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, double tol) {
  const int k = qubit_count(m.dim());
  auto violations = validate_density(m, tol);
  if (!violations.empty()) {
    std::string msg = "not a density operator:";
    for (const auto& v : violations) msg += " " + v.describe() + ";";
    msg.pop_back();
    throw InvalidStateError(msg);
  }
  return DensityOperator(std::move(m), k);
}

DensityOperator DensityOperator::assume_valid(ComplexMatrix m) {
  const int k = qubit_count(m.dim());
  return DensityOperator(std::move(m), k);
}

std::string Violation::describe() const {
  std::ostringstream os;
  os.precision(12);
  switch (kind) {
    case Kind::NotHermitian:
      os << "not Hermitian (deviation " << measured << ")";
      break;
    case Kind::TraceNotOne:
      os << "trace = " << measured;
      break;
    case Kind::NegativeEigenvalue:
      os << "negative eigenvalue " << measured;
      break;
  }
  return os.str();
}

std::vector<Violation> validate_density(const ComplexMatrix& m, double tol) {
  std::vector<Violation> out;
  const double herr = hermiticity_error(m);
  if (herr > tol) out.push_back({Violation::Kind::NotHermitian, herr});

  const Complex tr = trace(m);
  if (std::abs(tr - Complex{1.0}) > tol) out.push_back({Violation::Kind::TraceNotOne, tr.real()});

  // The eigensolver needs a Hermitian input; a non-Hermitian matrix is already rejected.
  if (herr <= tol) {
    const double lo = min_eigenvalue_hermitian(m, tol);
    if (lo < -tol) out.push_back({Violation::Kind::NegativeEigenvalue, lo});
  }
  return out;
}

std::vector<Violation> validate_density(const DensityOperator& d, double tol) {
  return validate_density(d.matrix(), tol);
}

DensityOperator bloch_to_density(const BlochVector& b, double tol) {
  if (b.norm() > 1.0 + tol) {
    std::ostringstream os;
    os.precision(12);
    os << "Bloch vector (" << b.r1 << ", " << b.r2 << ", " << b.r3 << ") has norm " << b.norm()
       << " > 1";
    throw InvalidStateError(os.str());
  }
  ComplexMatrix m{{0.5 * (1.0 + b.r3), 0.5 * Complex(b.r1, -b.r2)},
                  {0.5 * Complex(b.r1, b.r2), 0.5 * (1.0 - b.r3)}};
  return DensityOperator::assume_valid(std::move(m));
}

BlochVector density_to_bloch(const DensityOperator& d) {
  if (d.num_qubits() != 1) {
    throw DimensionError("density_to_bloch: expected a single-qubit state, got " +
                         std::to_string(d.num_qubits()) + " qubits");
  }
  const auto& m = d.matrix();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), m(0, 0).real() - m(1, 1).real()};
}

DensityOperator basis_register(std::span<const int> bits) {
  if (bits.empty()) throw std::invalid_argument("basis_register: empty bit list");
  if (bits.size() > 30) throw DimensionError("basis_register: too many qubits");
  std::size_t index = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("basis_register: bits must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(b);
  }
  ComplexMatrix m(std::size_t{1} << bits.size());
  m(index, index) = 1.0;
  return DensityOperator::assume_valid(std::move(m));
}

DensityOperator tensor_states(std::span<const DensityOperator> parts) {
  if (parts.empty()) throw std::invalid_argument("tensor_states: empty list");
  ComplexMatrix m = parts.front().matrix();
  for (std::size_t i = 1; i < parts.size(); ++i) m = kron(m, parts[i].matrix());
  return DensityOperator::assume_valid(std::move(m));
}

DensityOperator product_state(std::span<const BlochVector> factors) {
  std::vector<DensityOperator> parts;
  parts.reserve(factors.size());
  for (const auto& b : factors) parts.push_back(bloch_to_density(b));
  return tensor_states(parts);
}

double purity(const DensityOperator& d) {
  return trace_of_product(d.matrix(), d.matrix()).real();
}

}  // namespace mtqcl
