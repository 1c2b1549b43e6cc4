#include "rectexp/baselines.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rectexp/errors.hpp"
#include "rectexp/parallel.hpp"
#include "rectexp/quad_rules.hpp"

namespace rectexp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

}  // namespace

Complex TalbotContour::point(double theta) const
{
  // theta cot(a theta) -> 1/a as theta -> 0
  const double c = theta == 0.0 ? 1.0 / cot_scale : theta / std::tan(cot_scale * theta);
  return scale * Complex(-sigma + mu * c, nu * theta);
}

Complex TalbotContour::derivative(double theta) const
{
  if (theta == 0.0) return scale * Complex(0.0, nu);
  const double at = cot_scale * theta;
  const double sn = std::sin(at);
  return scale * Complex(mu * (1.0 / std::tan(at) - at / (sn * sn)), nu);
}

TalbotContour make_talbot_contour(TalbotKind kind, int nodes, double fixed_scale)
{
  if (nodes < 1) throw ParameterDomainError("talbot: node count must be >= 1, got " + std::to_string(nodes));
  if (!(fixed_scale > 0.0)) throw ParameterDomainError("talbot: fixed contour scale must be positive");
  return {kind, nodes, kind == TalbotKind::Optimized ? static_cast<double>(nodes) : fixed_scale};
}

BaselineResult talbot_expm(const ComplexMatrix& a, int nodes, TalbotKind kind, unsigned threads, double fixed_scale)
{
  if (!a.square() || a.rows() == 0) throw ParameterDomainError("talbot_expm: matrix must be square and non-empty");
  const TalbotContour contour = make_talbot_contour(kind, nodes, fixed_scale);
  const bool real_input = a.is_real();
  const ComplexMatrix id = ComplexMatrix::identity(a.rows());
  const double step = 2.0 * kPi / nodes;

  // Node indices actually evaluated: all of them, or theta >= 0 for real A.
  std::vector<int> used;
  for (int k = 0; k < nodes; ++k) {
    const int mirror = nodes - 1 - k;
    if (!real_input || k >= mirror) used.push_back(k);
  }

  auto term = [&](std::size_t i) -> ComplexMatrix {
    const int k = used[i];
    const double theta = -kPi + (k + 0.5) * step;
    const Complex zeta = contour.point(theta);
    // (zeta I - A)^{-1} = -(A - zeta I)^{-1}
    ComplexMatrix r = solve_shifted(a, -zeta, id);
    r *= -std::exp(zeta) * contour.derivative(theta) / (kI * static_cast<double>(nodes));
    if (real_input) {
      // The conjugate node contributes the conjugate term.
      const bool self_paired = k == nodes - 1 - k;
      ComplexMatrix re = real_part(r);
      if (!self_paired) re *= 2.0;
      return re;
    }
    return r;
  };

  BaselineResult out{deterministic_sum<ComplexMatrix>(used.size(), term, threads), static_cast<long>(used.size())};
  return out;
}

Complex laguerre_I(Complex z, double alpha, int order)
{
  if (!(z.real() < 0.0)) throw ParameterDomainError("laguerre_I: Re z must be negative");
  const GaussRule rule = gauss_laguerre(order);
  const Complex ia = kI * alpha;
  const Complex ep = std::polar(1.0, alpha);
  const Complex em = std::polar(1.0, -alpha);
  std::vector<Complex> terms;
  terms.reserve(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    terms.push_back(rule.weights[i] * (ep / (z - ia + x) - em / (z + ia + x)));
  }
  return pairwise_sum(terms, 0, terms.size()) / (2.0 * kPi * kI);
}

BaselineResult laguerre_I(const ComplexMatrix& a, double alpha, int order, unsigned threads)
{
  if (!a.square() || a.rows() == 0) throw ParameterDomainError("laguerre_I: matrix must be square and non-empty");
  const GaussRule rule = gauss_laguerre(order);
  const ComplexMatrix id = ComplexMatrix::identity(a.rows());
  const Complex ep = std::polar(1.0, alpha);
  const Complex em = std::polar(1.0, -alpha);

  auto term = [&](std::size_t i) -> ComplexMatrix {
    const double x = rule.nodes[i];
    const double w = rule.weights[i];
    if (w == 0.0) return ComplexMatrix(a.rows(), a.cols());
    ComplexMatrix plus = solve_shifted(a, Complex(x, -alpha), id);
    ComplexMatrix minus = solve_shifted(a, Complex(x, alpha), id);
    plus *= ep;
    minus *= em;
    plus -= minus;
    plus *= w / (2.0 * kPi * kI);
    return plus;
  };

  return {deterministic_sum<ComplexMatrix>(rule.nodes.size(), term, threads), 2L * order};
}

}  // namespace rectexp
