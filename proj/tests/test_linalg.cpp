#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "rectexp/errors.hpp"
#include "rectexp/linalg.hpp"
#include "rectexp/test_matrices.hpp"

using namespace rectexp;

namespace {

ComplexMatrix random_matrix(std::size_t m, Rng& rng)
{
  ComplexMatrix a(m, m);
  for (auto& v : a.data()) v = Complex(rng.normal(), rng.normal());
  return a;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

Complex cofactor_det(const ComplexMatrix& a)
{
  const std::size_t m = a.rows();
  if (m == 1) return a(0, 0);
  Complex sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    ComplexMatrix minor(m - 1, m - 1);
    for (std::size_t r = 1; r < m; ++r)
      for (std::size_t c = 0, cc = 0; c < m; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    sum += (j % 2 ? -1.0 : 1.0) * a(0, j) * cofactor_det(minor);
  }
  return sum;
}

}  // namespace

TEST_CASE("determinant basics")
{
  CHECK(det(lu_factor(ComplexMatrix::identity(4))) == Complex(1.0, 0.0));
  ComplexMatrix p(3, 3);
  p(0, 1) = p(1, 0) = p(2, 2) = 1.0;
  CHECK(std::abs(det(lu_factor(p)) + 1.0) <= 1e-15);
}

TEST_CASE("LU reconstructs P A = L U")
{
  Rng rng(11);
  const ComplexMatrix a = random_matrix(20, rng);
  const LuFactor f = lu_factor(a);
  ComplexMatrix l = ComplexMatrix::identity(20), u(20, 20);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) (i > j ? l(i, j) : u(i, j)) = f.lu(i, j);
  ComplexMatrix pa = a;
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) std::swap(pa(i, j), pa(f.pivots[i], j));
  CHECK(max_abs_diff(pa, l * u) <= 1e-13 * norm_fro(a));
}

TEST_CASE("solve residuals")
{
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 15;
    const ComplexMatrix a = random_matrix(m, rng);
    const ComplexMatrix b = random_matrix(m, rng);
    const ComplexMatrix x = solve(lu_factor(a), b);
    CHECK(norm_fro(a * x - b) <= 1e-12 * norm_fro(a) * norm_fro(x) + 1e-14 * norm_fro(b));
  }
  const ComplexMatrix a = random_matrix(8, rng);
  const ComplexMatrix inv = solve(lu_factor(a), ComplexMatrix::identity(8));
  CHECK(max_abs_diff(a * inv, ComplexMatrix::identity(8)) <= 1e-12);
}

TEST_CASE("shifted solve")
{
  Rng rng(13);
  const ComplexMatrix a = random_matrix(6, rng);
  const ComplexMatrix b = random_matrix(6, rng);
  const Complex s(1.5, -2.0);
  const ComplexMatrix x = solve_shifted(a, s, b);
  CHECK(norm_fro(a * x + s * x - b) <= 1e-12 * norm_fro(b) * std::max(1.0, norm_fro(x)));
}

TEST_CASE("determinant against cofactor expansion and multiplicativity")
{
  Rng rng(14);
  const ComplexMatrix a = random_matrix(5, rng);
  const Complex ref = cofactor_det(a);
  CHECK(std::abs(det(lu_factor(a)) - ref) <= 1e-12 * std::abs(ref));
  const ComplexMatrix x = random_matrix(6, rng), y = random_matrix(6, rng);
  const Complex lhs = det(lu_factor(x * y));
  const Complex rhs = det(lu_factor(x)) * det(lu_factor(y));
  CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
}

TEST_CASE("singular matrices throw")
{
  ComplexMatrix a(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  CHECK_THROWS_AS(lu_factor(a), SingularMatrixError);
  CHECK_THROWS_AS(solve_shifted(ComplexMatrix::identity(3), -1.0, ComplexMatrix::identity(3)), SingularMatrixError);
}

TEST_CASE("norms of a diagonal matrix")
{
  const std::vector<Complex> d = {1.0, -2.0, Complex(0.0, 3.0)};
  const ComplexMatrix a = ComplexMatrix::diagonal(d);
  CHECK(norm_fro(a) == doctest::Approx(std::sqrt(14.0)).epsilon(1e-15));
  const Norm2Estimate e = norm2_estimate(a);
  CHECK(e.converged);
  CHECK(e.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(norm(a, NormKind::Two) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(norm(a, NormKind::Frobenius) == norm_fro(a));
}

TEST_CASE("norm equivalence")
{
  Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + trial % 12;
    const ComplexMatrix a = random_matrix(m, rng);
    const double two = norm2(a), fro = norm_fro(a);
    CHECK(two <= fro * (1.0 + 1e-9));
    CHECK(fro <= std::sqrt(static_cast<double>(m)) * two * (1.0 + 1e-9));
  }
}

TEST_CASE("norm estimate edge cases")
{
  ComplexMatrix a = ComplexMatrix::identity(2);
  CHECK(norm2_estimate(ComplexMatrix(3, 3)).value == 0.0);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(std::isnan(norm2_estimate(a).value));
  a(0, 1) = std::numeric_limits<double>::infinity();
  CHECK(std::isinf(norm2_estimate(a).value));
  const std::vector<Complex> big = {1e200, -3e200};
  CHECK(norm2(ComplexMatrix::diagonal(big)) == doctest::Approx(3e200).epsilon(1e-9));
  const std::vector<Complex> tiny = {1e-200, -3e-200};
  CHECK(norm2(ComplexMatrix::diagonal(tiny)) == doctest::Approx(3e-200).epsilon(1e-9));
}

TEST_CASE("inverse-norm lemmas")
{
  const InverseNormReport id = check_inverse_norm_lemmas(ComplexMatrix::identity(3));
  CHECK(id.holds());
  CHECK(id.two.lhs == doctest::Approx(1.0));
  CHECK(id.two.rhs == doctest::Approx(1.0));
  const std::vector<Complex> d = {1.0, 2.0};
  const InverseNormReport r = check_inverse_norm_lemmas(ComplexMatrix::diagonal(d));
  CHECK(r.two.lhs == doctest::Approx(1.0));
  CHECK(r.two.rhs == doctest::Approx(1.0));
  CHECK(r.fro.lhs == doctest::Approx(std::sqrt(1.25)));
  CHECK(r.fro.rhs == doctest::Approx(std::sqrt(2.0) * std::sqrt(5.0) / 2.0));
  Rng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const InverseNormReport rep = check_inverse_norm_lemmas(random_matrix(1 + trial % 10, rng));
    CHECK(rep.holds());
    CHECK(rep.two.slack() >= -1e-12 * rep.two.rhs);
  }
}

TEST_CASE("elementwise helpers")
{
  ComplexMatrix a(2, 2, {Complex(1, 2), Complex(3, -4), Complex(5, 0), Complex(0, 6)});
  CHECK(adjoint(a)(0, 1) == std::conj(a(1, 0)));
  CHECK(transpose(a)(0, 1) == a(1, 0));
  CHECK(real_part(a).is_real());
  CHECK(real_part(a) + Complex(0, 1) * imag_part(a) == a);
  CHECK_FALSE(a.is_real());
  ComplexMatrix b(3, 3);
  CHECK_THROWS(a += b);
}
