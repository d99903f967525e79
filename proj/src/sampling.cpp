#include "mtqcl/sampling.hpp"

#include <cmath>

namespace mtqcl {

namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

std::vector<Complex> gaussian_vector(std::size_t n, Rng& rng) {
  std::vector<Complex> v(n);
  for (auto& x : v) x = gaussian(rng);
  return v;
}

}  // namespace

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  std::vector<std::vector<Complex>> cols;
  cols.reserve(dim);
  while (cols.size() < dim) {
    auto v = gaussian_vector(dim, rng);
    // Two passes of modified Gram-Schmidt keep the columns orthogonal to 1e-15.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : cols) {
        Complex proj{};
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(q[i]) * v[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * q[i];
      }
    }
    double norm = 0.0;
    for (const auto& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (auto& x : v) x /= norm;
    cols.push_back(std::move(v));
  }
  ComplexMatrix u(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = cols[j][i];
  }
  return u;
}

GateSpec random_gate(int arity, Rng& rng, std::string name) {
  return GateSpec(std::move(name), random_unitary(std::size_t{1} << arity, rng));
}

BlochVector random_bloch(Rng& rng, bool pure) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double x = 0, y = 0, z = 0, n = 0;
  do {
    x = normal(rng);
    y = normal(rng);
    z = normal(rng);
    n = std::sqrt(x * x + y * y + z * z);
  } while (n < 1e-12);
  double radius = 1.0;
  if (!pure) radius = std::cbrt(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  return {radius * x / n, radius * y / n, radius * z / n};
}

DensityOperator random_density(int num_qubits, Rng& rng) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  ComplexMatrix g(dim, gaussian_vector(dim * dim, rng));
  ComplexMatrix rho = matmul(g, dagger(g));
  rho *= 1.0 / trace(rho).real();
  // Symmetrize away rounding so the matrix is exactly Hermitian.
  ComplexMatrix sym = 0.5 * (rho + dagger(rho));
  return DensityOperator::assume_valid(std::move(sym));
}

DensityOperator random_pure_state(int num_qubits, Rng& rng) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  auto psi = gaussian_vector(dim, rng);
  double norm = 0.0;
  for (const auto& x : psi) norm += std::norm(x);
  ComplexMatrix rho(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) rho(i, j) = psi[i] * std::conj(psi[j]) / norm;
  }
  return DensityOperator::assume_valid(std::move(rho));
}

DensityOperator random_product_state(int num_qubits, Rng& rng, std::vector<BlochVector>& factors) {
  factors.clear();
  for (int i = 0; i < num_qubits; ++i) factors.push_back(random_bloch(rng));
  return product_state(factors);
}

}  // namespace mtqcl
