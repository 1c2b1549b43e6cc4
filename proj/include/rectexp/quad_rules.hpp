#pragma once

#include <utility>
#include <vector>

namespace rectexp {

/// Node of the trapezoid rule after the transformation
/// x = phi(t) = log(1 + exp(pi sinh t)), which maps (-inf, inf) onto (0, inf)
/// with double-exponential decay at both ends.
struct DeNode
{
  double t;  // trapezoid abscissa k*h
  double x;  // phi(t)
  double w;  // h * phi'(t)
};

struct DeTransformValue
{
  double x;
  double dx;
};

DeTransformValue de_transform(double t) noexcept;

/// 2n+1 nodes at t = k*h, k = -n..n, ordered by increasing t.
std::vector<DeNode> de_rule(int n, double h);

enum class GaussKind
{
  Legendre,
  Laguerre
};

/// Gauss rule with nodes in increasing order.
///
/// Legendre: integrates over [-1, 1] with unit weight.
/// Laguerre: the weights are those of the weight function e^{-x} on [0, inf),
///   i.e. sum_i w_i g(x_i) approximates int_0^inf e^{-x} g(x) dx. Callers whose
///   integrand already carries the factor e^{-x} drop it and evaluate g only.
struct GaussRule
{
  GaussKind kind;
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const noexcept { return static_cast<int>(nodes.size()); }
};

/// Legendre roots by Newton iteration on the three-term recurrence, started
/// from the asymptotic cosine guesses. Throws NumericalError if a root needs
/// more than 100 Newton steps.
GaussRule gauss_legendre(int order);

/// Default ceiling on the Laguerre order. Newton on the Laguerre recurrence
/// stays accurate to roughly 1e-13 relative in the nodes up to about N = 200;
/// past that the largest nodes lose digits and the smallest weights underflow
/// (weights behave like e^{-x_i}, and x_N grows like 4N, so at N ~ 180 the tail
/// weights fall below the double range).
inline constexpr int kLaguerreMaxOrder = 200;

/// Gauss-Laguerre rule for the weight e^{-x}. Orders above `max_order`
/// are rejected with ParameterDomainError; raise `max_order` explicitly to
/// accept degraded tail nodes.
GaussRule gauss_laguerre(int order, int max_order = kLaguerreMaxOrder);

}  // namespace rectexp
