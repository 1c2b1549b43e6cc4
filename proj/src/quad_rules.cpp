#include "rectexp/quad_rules.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rectexp/errors.hpp"

namespace rectexp {

namespace {

constexpr int kMaxNewtonSteps = 100;

// Above this, log1p(exp(s)) is evaluated as s + log1p(exp(-s)).
constexpr double kLargeExponent = 30.0;

// Logistic 1/(1+exp(-s)) without overflow for either sign of s.
double logistic(double s) noexcept
{
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

struct LegendreEval
{
  double p;   // P_N(x)
  double dp;  // P_N'(x)
};

LegendreEval legendre(int order, double x) noexcept
{
  double p0 = 1.0;
  double p1 = x;
  for (int j = 2; j <= order; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  if (order == 1) p0 = 1.0;
  // p1 = P_N, p0 = P_{N-1}
  const double dp = order * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Laguerre values L_N, L_{N-1} and L_N' with a shared binary exponent so
// that the recurrence survives arguments where L_N exceeds the double range.
struct LaguerreEval
{
  double p;      // L_N(x) * 2^-scale
  double pm1;    // L_{N-1}(x) * 2^-scale
  double dp;     // L_N'(x) * 2^-scale
  long scale;
};

LaguerreEval laguerre(int order, double x) noexcept
{
  double p1 = 1.0;
  double p2 = 0.0;
  long scale = 0;
  for (int j = 1; j <= order; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = ((2.0 * j - 1.0 - x) * p2 - (j - 1.0) * p3) / j;
    if (std::abs(p1) > 0x1p500) {
      p1 = std::ldexp(p1, -500);
      p2 = std::ldexp(p2, -500);
      scale += 500;
    }
  }
  const double dp = (order * p1 - order * p2) / x;
  return {p1, p2, dp, scale};
}

}  // namespace

DeTransformValue de_transform(double t) noexcept
{
  const double s = std::numbers::pi * std::sinh(t);
  const double x = s > kLargeExponent ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
  const double dx = std::numbers::pi * std::cosh(t) * logistic(s);
  return {x, dx};
}

std::vector<DeNode> de_rule(int n, double h)
{
  if (n < 1) throw ParameterDomainError("de_rule: n must be >= 1, got " + std::to_string(n));
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterDomainError("de_rule: h must be positive and finite");

  std::vector<DeNode> nodes;
  nodes.reserve(2 * static_cast<std::size_t>(n) + 1);
  for (int k = -n; k <= n; ++k) {
    const double t = k * h;
    const auto [x, dx] = de_transform(t);
    nodes.push_back({t, x, h * dx});
  }
  return nodes;
}

GaussRule gauss_legendre(int order)
{
  if (order < 1) throw ParameterDomainError("gauss_legendre: order must be >= 1, got " + std::to_string(order));

  GaussRule rule{GaussKind::Legendre, std::vector<double>(order), std::vector<double>(order)};
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    LegendreEval e{};
    int step = 0;
    for (;; ++step) {
      if (step == kMaxNewtonSteps)
        throw NumericalError("gauss_legendre: Newton iteration did not converge for root " + std::to_string(i) +
                             " of order " + std::to_string(order));
      e = legendre(order, x);
      const double dx = e.p / e.dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    e = legendre(order, x);
    const double w = 2.0 / ((1.0 - x * x) * e.dp * e.dp);
    rule.nodes[order - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[order - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

GaussRule gauss_laguerre(int order, int max_order)
{
  if (order < 1) throw ParameterDomainError("gauss_laguerre: order must be >= 1, got " + std::to_string(order));
  if (order > max_order)
    throw ParameterDomainError("gauss_laguerre: order " + std::to_string(order) + " exceeds the ceiling " +
                               std::to_string(max_order) + "; node accuracy degrades beyond it");

  GaussRule rule{GaussKind::Laguerre, std::vector<double>(order), std::vector<double>(order)};
  const double n = order;
  double z = 0.0;
  for (int i = 0; i < order; ++i) {
    // Initial guesses after Stroud & Secrest, refined by the previous roots.
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
    }

    LaguerreEval e{};
    double last_step = std::numeric_limits<double>::infinity();
    for (int step = 0;; ++step) {
      if (step == kMaxNewtonSteps)
        throw NumericalError("gauss_laguerre: Newton iteration did not converge for root " + std::to_string(i) +
                             " of order " + std::to_string(order));
      e = laguerre(order, z);
      const double dz = e.p / e.dp;
      z -= dz;
      const double size = std::abs(dz);
      if (size <= 1e-14 * std::abs(z)) break;
      // Rounding-limited: the step no longer shrinks.
      if (size <= 1e-12 * std::abs(z) && size >= last_step) break;
      last_step = size;
    }
    e = laguerre(order, z);
    // w = -1 / (N L_N'(x) L_{N-1}(x)), undoing the shared 2^scale of both factors.
    const double w = -1.0 / (n * e.dp * e.pm1);
    rule.nodes[i] = z;
    rule.weights[i] = std::ldexp(w, static_cast<int>(-2 * e.scale));
  }
  return rule;
}

}  // namespace rectexp
