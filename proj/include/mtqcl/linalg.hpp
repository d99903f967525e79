#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtqcl {

using Complex = std::complex<double>;

/// Default comparison tolerance. Absorbs floating-point error only.
inline constexpr double kDefaultTol = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense square complex matrix, row-major.
///
/// This is the carrier for states, gates and projectors. Register-space
/// operators have power-of-two dimension; that is checked by callers.
class ComplexMatrix {
 public:
  /// 1x1 zero matrix.
  ComplexMatrix();
  /// dim x dim zero matrix.
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  [[nodiscard]] std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  [[nodiscard]] std::span<const Complex> data() const { return data_; }
  [[nodiscard]] std::span<Complex> data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 1;
  std::vector<Complex> data_ = std::vector<Complex>(1);
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product: entry[(i*db+k),(j*db+l)] = a[i,j]*b[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Left-to-right Kronecker product of all factors. Empty input gives [1].
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);
ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

/// Tr(a*b) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Assembles [[a, b], [c, d]] from four blocks of equal dimension.
ComplexMatrix block_matrix(const ComplexMatrix& a, const ComplexMatrix& b,
                           const ComplexMatrix& c, const ComplexMatrix& d);

/// Sub-block (row_block, col_block) of size `block_dim`.
ComplexMatrix sub_block(const ComplexMatrix& a, std::size_t block_dim, std::size_t row_block,
                        std::size_t col_block);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDefaultTol);

/// Max entrywise |ab - ba|.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Max entrywise |a - a^dagger|.
double hermiticity_error(const ComplexMatrix& a);

/// Max entrywise |a^dagger a - I|.
double unitarity_error(const ComplexMatrix& a);
bool is_unitary(const ComplexMatrix& a, double tol = kDefaultTol);

/// Smallest eigenvalue of a Hermitian matrix. Throws NotHermitianError if
/// the input deviates from its adjoint by more than `hermitian_tol`.
double min_eigenvalue_hermitian(const ComplexMatrix& a, double hermitian_tol = kDefaultTol);

/// I^{(n)}: identity on n qubits (dimension 2^n). n = 0 gives [1].
ComplexMatrix identity_qubits(int n);

/// A^{(n)} = I^{(n-1)} (x) A: `a` acting on the last of n wires.
ComplexMatrix lift_to_last(const ComplexMatrix& a, int n);

/// Log2 of a power-of-two dimension; throws DimensionError otherwise.
int qubit_count(std::size_t dim);

std::string to_string(const ComplexMatrix& a, int precision = 6);

}  // namespace mtqcl
