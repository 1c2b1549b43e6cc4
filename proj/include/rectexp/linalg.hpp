#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rectexp {

using Complex = std::complex<double>;

/// Dense complex matrix, column-major.
class ComplexMatrix
{
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> column_major);

  static ComplexMatrix identity(std::size_t m);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix column(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const Complex> col(std::size_t j) const noexcept { return {data_.data() + j * rows_, rows_}; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s) noexcept;

  /// True when every entry has zero imaginary part.
  bool is_real() const noexcept;

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
/// Entrywise real and imaginary parts, returned as real-valued complex matrices.
ComplexMatrix real_part(const ComplexMatrix& a);
ComplexMatrix imag_part(const ComplexMatrix& a);

/// Packed partial-pivoting LU factors: P A = L U with unit-lower L.
struct LuFactor
{
  ComplexMatrix lu;
  std::vector<std::size_t> pivots;  // row interchanged with row i at step i
  double sign_det = 1.0;            // parity of the row interchanges

  std::size_t dim() const noexcept { return lu.rows(); }
};

/// Throws SingularMatrixError when a pivot falls below m * eps * max|a_ij|.
LuFactor lu_factor(ComplexMatrix a);

/// Solves A X = B for any number of right-hand-side columns.
ComplexMatrix solve(const LuFactor& lu, ComplexMatrix b);
Complex det(const LuFactor& lu);

/// Solves (A + shift I) X = B; the resolvent building block.
ComplexMatrix solve_shifted(const ComplexMatrix& a, Complex shift, const ComplexMatrix& b);

double norm_fro(const ComplexMatrix& a);

struct Norm2Estimate
{
  double value;
  int iterations;
  bool converged;
};

/// Largest singular value by power iteration on A^H A. Never throws.
Norm2Estimate norm2_estimate(const ComplexMatrix& a, double tol = 1e-10, int max_iter = 5000);

/// As norm2_estimate but throws NormNotConvergedError on hitting the cap.
double norm2(const ComplexMatrix& a, double tol = 1e-10, int max_iter = 5000);

enum class NormKind
{
  Two,
  Frobenius
};

double norm(const ComplexMatrix& a, NormKind kind);

/// Both sides of ||T^{-1}|| <= gamma ||T||^{m-1} / |det T| for the 2-norm
/// (gamma = 1) and the Frobenius norm (gamma = sqrt(m)).
struct InverseNormSide
{
  double lhs;
  double rhs;
  bool holds;
  double slack() const noexcept { return rhs - lhs; }
};

struct InverseNormReport
{
  InverseNormSide two;
  InverseNormSide fro;
  bool holds() const noexcept { return two.holds && fro.holds; }
};

InverseNormReport check_inverse_norm_lemmas(const ComplexMatrix& t);

}  // namespace rectexp
