#include "rectexp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rectexp/errors.hpp"

namespace rectexp {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ParameterDomainError(std::string(op) + ": shape mismatch");
}

double vec_norm(std::span<const Complex> v)
{
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  if (std::isfinite(s) && s > std::numeric_limits<double>::min()) return std::sqrt(s);
  double scale = 0.0;
  for (const auto& x : v) scale = std::max({scale, std::abs(x.real()), std::abs(x.imag())});
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  s = 0.0;
  for (const auto& x : v) s += std::norm(x / scale);
  return scale * std::sqrt(s);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major))
{
  if (data_.size() != rows * cols) throw ParameterDomainError("ComplexMatrix: data size does not match shape");
}

ComplexMatrix ComplexMatrix::identity(std::size_t m)
{
  ComplexMatrix id(m, m);
  for (std::size_t i = 0; i < m; ++i) id(i, i) = 1.0;
  return id;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag)
{
  ComplexMatrix d(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
  return d;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> v)
{
  return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other)
{
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other)
{
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) noexcept
{
  for (auto& x : data_) x *= s;
  return *this;
}

bool ComplexMatrix::is_real() const noexcept
{
  return std::all_of(data_.begin(), data_.end(), [](const Complex& x) { return x.imag() == 0.0; });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b)
{
  if (a.cols() != b.rows()) throw ParameterDomainError("operator*: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const Complex bpj = b(p, j);
      if (bpj == Complex{}) continue;
      for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) += a(i, p) * bpj;
    }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a)
{
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) t(j, i) = std::conj(a(i, j));
  return t;
}

ComplexMatrix transpose(const ComplexMatrix& a)
{
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
  return t;
}

ComplexMatrix real_part(const ComplexMatrix& a)
{
  ComplexMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) r.data()[i] = a.data()[i].real();
  return r;
}

ComplexMatrix imag_part(const ComplexMatrix& a)
{
  ComplexMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) r.data()[i] = a.data()[i].imag();
  return r;
}

LuFactor lu_factor(ComplexMatrix a)
{
  if (!a.square()) throw ParameterDomainError("lu_factor: matrix must be square");
  const std::size_t m = a.rows();

  double max_entry = 0.0;
  for (const auto& x : a.data()) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw ParameterDomainError("lu_factor: matrix has non-finite entries");
    max_entry = std::max(max_entry, std::abs(x));
  }
  const double threshold = static_cast<double>(m) * std::numeric_limits<double>::epsilon() * max_entry;

  LuFactor f{std::move(a), std::vector<std::size_t>(m), 1.0};
  auto& lu = f.lu;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < m; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best <= threshold || best == 0.0)
      throw SingularMatrixError("lu_factor: matrix is singular to working precision (pivot " + std::to_string(k) +
                                ")");
    f.pivots[k] = p;
    if (p != k) {
      f.sign_det = -f.sign_det;
      for (std::size_t j = 0; j < m; ++j) std::swap(lu(k, j), lu(p, j));
    }
    const Complex inv_pivot = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < m; ++i) lu(i, k) *= inv_pivot;
    for (std::size_t j = k + 1; j < m; ++j) {
      const Complex ukj = lu(k, j);
      if (ukj == Complex{}) continue;
      for (std::size_t i = k + 1; i < m; ++i) lu(i, j) -= lu(i, k) * ukj;
    }
  }
  return f;
}

ComplexMatrix solve(const LuFactor& f, ComplexMatrix b)
{
  const std::size_t m = f.dim();
  if (b.rows() != m) throw ParameterDomainError("solve: right-hand side has the wrong number of rows");
  const auto& lu = f.lu;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto x = b.col(c);
    for (std::size_t k = 0; k < m; ++k)
      if (f.pivots[k] != k) std::swap(x[k], x[f.pivots[k]]);
    for (std::size_t j = 0; j < m; ++j) {
      const Complex xj = x[j];
      if (xj == Complex{}) continue;
      for (std::size_t i = j + 1; i < m; ++i) x[i] -= lu(i, j) * xj;
    }
    for (std::size_t j = m; j-- > 0;) {
      x[j] /= lu(j, j);
      const Complex xj = x[j];
      if (xj == Complex{}) continue;
      for (std::size_t i = 0; i < j; ++i) x[i] -= lu(i, j) * xj;
    }
  }
  return b;
}

Complex det(const LuFactor& f)
{
  Complex d = f.sign_det;
  for (std::size_t i = 0; i < f.dim(); ++i) d *= f.lu(i, i);
  return d;
}

ComplexMatrix solve_shifted(const ComplexMatrix& a, Complex shift, const ComplexMatrix& b)
{
  ComplexMatrix s = a;
  if (!s.square()) throw ParameterDomainError("solve_shifted: matrix must be square");
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) += shift;
  return solve(lu_factor(std::move(s)), b);
}

double norm_fro(const ComplexMatrix& a) { return vec_norm(a.data()); }

Norm2Estimate norm2_estimate(const ComplexMatrix& a, double tol, int max_iter)
{
  const std::size_t n = a.cols();
  if (n == 0 || a.rows() == 0) return {0.0, 0, true};
  bool has_inf = false;
  for (const auto& x : a.data()) {
    if (std::isnan(x.real()) || std::isnan(x.imag())) return {std::numeric_limits<double>::quiet_NaN(), 0, true};
    has_inf = has_inf || std::isinf(x.real()) || std::isinf(x.imag());
  }
  if (has_inf) return {std::numeric_limits<double>::infinity(), 0, true};

  // Power-of-two scaling keeps A^H A representable for very large or small entries.
  double max_abs = 0.0;
  for (const auto& x : a.data()) max_abs = std::max({max_abs, std::abs(x.real()), std::abs(x.imag())});
  if (max_abs == 0.0) return {0.0, 0, true};
  int exponent = 0;
  std::frexp(max_abs, &exponent);
  if (exponent > 128 || exponent < -128) {
    ComplexMatrix scaled = a;
    for (auto& x : scaled.data()) x = Complex(std::ldexp(x.real(), -exponent), std::ldexp(x.imag(), -exponent));
    Norm2Estimate est = norm2_estimate(scaled, tol, max_iter);
    est.value = std::ldexp(est.value, exponent);
    return est;
  }

  // Fixed, non-symmetric start vector so results are reproducible.
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex(1.0 + 0.37 * std::sin(1.3 * i + 0.2), 0.11 * std::cos(0.7 * i));
  double nv = vec_norm(v);
  for (auto& x : v) x /= nv;

  std::vector<Complex> w(a.rows());
  double sigma = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    std::fill(w.begin(), w.end(), Complex{});
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < a.rows(); ++i) w[i] += a(i, j) * v[j];
    const double next = vec_norm(w);
    if (next == 0.0) return {0.0, it, true};
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(a(i, j)) * w[i];
      v[j] = s;
    }
    nv = vec_norm(v);
    if (nv == 0.0) return {next, it, true};
    for (auto& x : v) x /= nv;
    if (std::abs(next - sigma) <= tol * next) return {next, it, true};
    sigma = next;
  }
  return {sigma, max_iter, false};
}

double norm2(const ComplexMatrix& a, double tol, int max_iter)
{
  const auto est = norm2_estimate(a, tol, max_iter);
  if (!est.converged)
    throw NormNotConvergedError("norm2: power iteration did not converge in " + std::to_string(max_iter) +
                                    " iterations (estimate " + std::to_string(est.value) + ")",
                                est.value);
  return est.value;
}

double norm(const ComplexMatrix& a, NormKind kind)
{
  return kind == NormKind::Two ? norm2(a) : norm_fro(a);
}

InverseNormReport check_inverse_norm_lemmas(const ComplexMatrix& t)
{
  if (!t.square()) throw ParameterDomainError("check_inverse_norm_lemmas: matrix must be square");
  const auto f = lu_factor(t);
  const auto inv = solve(f, ComplexMatrix::identity(t.rows()));
  const double abs_det = std::abs(det(f));
  const double m = static_cast<double>(t.rows());

  // Rayleigh quotients approach the 2-norm from below, so a tight tolerance
  // keeps the right-hand side from being under-estimated.
  constexpr double tight = 1e-14;
  constexpr int cap = 200000;
  const double inv2 = norm2_estimate(inv, tight, cap).value;
  const double t2 = norm2_estimate(t, tight, cap).value;

  auto side = [](double lhs, double rhs) {
    return InverseNormSide{lhs, rhs, lhs <= rhs * (1.0 + 1e-9)};
  };
  InverseNormReport r;
  r.two = side(inv2, std::pow(t2, m - 1.0) / abs_det);
  r.fro = side(norm_fro(inv), std::sqrt(m) * std::pow(norm_fro(t), m - 1.0) / abs_det);
  return r;
}

}  // namespace rectexp
