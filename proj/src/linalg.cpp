#include "mtqcl/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace mtqcl {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix() = default;

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw DimensionError("matrix dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw DimensionError("matrix dimension must be positive");
  if (data_.size() != dim * dim) {
    throw DimensionError("expected " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw DimensionError("matrix dimension must be positive");
  data_.clear();
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) {
          out(i * db + k, j * db + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix kron_all(std::initializer_list<ComplexMatrix> factors) {
  return kron_all(std::span<const ComplexMatrix>(factors.begin(), factors.size()));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

Complex trace(const ComplexMatrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_of_product");
  Complex t{};
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) t += a(i, k) * b(k, i);
  }
  return t;
}

ComplexMatrix block_matrix(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                           const ComplexMatrix& d) {
  require_same_dim(a, b, "block_matrix");
  require_same_dim(a, c, "block_matrix");
  require_same_dim(a, d, "block_matrix");
  const std::size_t n = a.dim();
  ComplexMatrix out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = a(i, j);
      out(i, j + n) = b(i, j);
      out(i + n, j) = c(i, j);
      out(i + n, j + n) = d(i, j);
    }
  }
  return out;
}

ComplexMatrix sub_block(const ComplexMatrix& a, std::size_t block_dim, std::size_t row_block,
                        std::size_t col_block) {
  if (block_dim == 0 || (row_block + 1) * block_dim > a.dim() ||
      (col_block + 1) * block_dim > a.dim()) {
    throw DimensionError("sub_block: block out of range");
  }
  ComplexMatrix out(block_dim);
  for (std::size_t i = 0; i < block_dim; ++i) {
    for (std::size_t j = 0; j < block_dim; ++j) {
      out(i, j) = a(row_block * block_dim + i, col_block * block_dim + j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) worst = std::max(worst, std::abs(da[i] - db[i]));
  return worst;
}

bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator_norm");
  return max_abs_diff(matmul(a, b), matmul(b, a));
}

double hermiticity_error(const ComplexMatrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i; j < a.dim(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return worst;
}

double unitarity_error(const ComplexMatrix& a) {
  return max_abs_diff(matmul(dagger(a), a), ComplexMatrix::identity(a.dim()));
}

bool is_unitary(const ComplexMatrix& a, double tol) { return unitarity_error(a) <= tol; }

double min_eigenvalue_hermitian(const ComplexMatrix& a, double hermitian_tol) {
  const double herr = hermiticity_error(a);
  if (herr > hermitian_tol) {
    throw NotHermitianError("min_eigenvalue_hermitian: matrix is not Hermitian (deviation " +
                            std::to_string(herr) + ")");
  }
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::Map<const RowMajor> view(a.data().data(), n, n);
  Eigen::MatrixXcd dense = view;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("min_eigenvalue_hermitian: eigensolver did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

ComplexMatrix identity_qubits(int n) {
  if (n < 0) throw DimensionError("identity_qubits: negative qubit count");
  if (n > 30) throw DimensionError("identity_qubits: qubit count too large");
  return ComplexMatrix::identity(std::size_t{1} << n);
}

ComplexMatrix lift_to_last(const ComplexMatrix& a, int n) {
  if (n < 1) throw DimensionError("lift_to_last: n must be at least 1");
  return kron(identity_qubits(n - 1), a);
}

int qubit_count(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

std::string to_string(const ComplexMatrix& a, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (j) os << ' ';
      os << a(i, j);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace mtqcl
