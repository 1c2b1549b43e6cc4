#include "rectexp/scalar_exp.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rectexp/errors.hpp"
#include "rectexp/parallel.hpp"

namespace rectexp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Complex guarded_inverse(Complex denominator, const char* who)
{
  if (std::abs(denominator) < kPoleGuard)
    throw ParameterDomainError(std::string(who) + ": quadrature node within " + std::to_string(kPoleGuard) +
                               " of a pole");
  return 1.0 / denominator;
}

void require_left_half_plane(Complex z, const char* who)
{
  if (!(z.real() < 0.0)) throw ParameterDomainError(std::string(who) + ": Re z must be negative");
}

}  // namespace

Complex f_alpha(Complex z, double alpha, Complex x)
{
  const Complex ia = kI * alpha;
  const Complex plus = std::polar(1.0, alpha) * guarded_inverse(z - ia + x, "f_alpha");
  const Complex minus = std::polar(1.0, -alpha) * guarded_inverse(z + ia + x, "f_alpha");
  return (plus - minus) * std::exp(-x) / (2.0 * kPi * kI);
}

Complex g_alpha(Complex z, double alpha, Complex x)
{
  const Complex iax = kI * alpha * x;
  return alpha / (2.0 * kPi) * std::exp(iax) * guarded_inverse(iax - z, "g_alpha");
}

Complex approx_I(Complex z, double alpha, int n, double h)
{
  auto nodes = de_rule(n, h);
  std::vector<Complex> terms;
  terms.reserve(nodes.size());
  for (const auto& node : nodes) terms.push_back(node.w * f_alpha(z, alpha, node.x));
  return pairwise_sum(terms, 0, terms.size());
}

double approx_I_real(double z, double alpha, int n, double h)
{
  auto nodes = de_rule(n, h);
  const Complex phase = std::polar(1.0, alpha);
  const Complex pole_shift(z, -alpha);
  std::vector<double> terms;
  terms.reserve(nodes.size());
  for (const auto& node : nodes) {
    const Complex v = phase * guarded_inverse(pole_shift + node.x, "approx_I_real");
    terms.push_back(node.w * v.imag() * std::exp(-node.x));
  }
  return pairwise_sum(terms, 0, terms.size()) / kPi;
}

Complex approx_J(Complex z, double alpha, const GaussRule& legendre)
{
  if (legendre.kind != GaussKind::Legendre || legendre.nodes.empty())
    throw ParameterDomainError("approx_J: needs a nonempty Gauss-Legendre rule");
  std::vector<Complex> terms;
  terms.reserve(legendre.nodes.size());
  for (std::size_t i = 0; i < legendre.nodes.size(); ++i)
    terms.push_back(legendre.weights[i] * g_alpha(z, alpha, legendre.nodes[i]));
  return pairwise_sum(terms, 0, terms.size());
}

Complex approx_J(Complex z, double alpha, int order)
{
  if (order < 2) throw ParameterDomainError("approx_J: order must be >= 2, got " + std::to_string(order));
  return approx_J(z, alpha, gauss_legendre(order));
}

Complex exp_scalar(Complex z, const QuadParams& params)
{
  require_left_half_plane(z, "exp_scalar");
  if (!(params.alpha > std::abs(z.imag())))
    throw ParameterDomainError("exp_scalar: alpha must exceed |Im z|");
  const Complex j = approx_J(z, params.alpha, params.N);
  if (z.imag() == 0.0) return approx_I_real(z.real(), params.alpha, params.n, params.h) + j;
  return approx_I(z, params.alpha, params.n, params.h) + j;
}

double bound_K(Complex z, double alpha, double d)
{
  require_left_half_plane(z, "bound_K");
  if (!(alpha > std::abs(z.imag()) + 2.0 * kPi))
    throw ParameterDomainError("bound_K: alpha must exceed |Im z| + 2pi");
  if (!(d > 0.0)) throw ParameterDomainError("bound_K: d must be positive");
  const double denominator =
      (alpha - std::abs(z.imag()) - 2.0 * kPi) * std::cos(d) - (-z.real() + std::numbers::ln2) * std::sin(d);
  if (!(denominator > 0.0))
    throw ParameterDomainError("bound_K: d lies outside the analyticity window (bound diverges)");
  return (1.0 / kPi) / denominator;
}

double bound_I(Complex z, double alpha, double d, int n)
{
  const double k = bound_K(z, alpha, d);
  if (!(n > 1.0 / (4.0 * d))) throw ParameterDomainError("bound_I: n must exceed 1/(4d)");
  return k * std::exp(-2.0 * kPi * d * n / std::log(4.0 * d * n));
}

double rho_z(Complex z, double alpha, double delta)
{
  require_left_half_plane(z, "rho_z");
  if (!(alpha > std::abs(z.imag()))) throw ParameterDomainError("rho_z: alpha must exceed |Im z|");
  const double r = std::abs(z.real()) / alpha;
  if (!(delta > 0.0 && delta < r))
    throw ParameterDomainError("rho_z: delta must lie in (0, |Re z|/alpha) = (0, " + std::to_string(r) + ")");
  const double s = r - delta;
  return s + std::sqrt(s * s + 1.0);
}

double bound_J(Complex z, double alpha, double delta, int order)
{
  if (order < 2) throw ParameterDomainError("bound_J: order must be >= 2");
  const double rho = rho_z(z, alpha, delta);
  return 32.0 * std::exp(std::abs(z.real())) / (15.0 * kPi * delta) * std::pow(rho, -2.0 * (order - 1)) /
         (rho * rho - 1.0);
}

}  // namespace rectexp
