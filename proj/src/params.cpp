#include "rectexp/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rectexp/errors.hpp"

namespace rectexp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double v) { return std::to_string(v); }

void require_alpha_window(const SpectralEnvelope& envelope, double alpha, const char* who)
{
  if (!(alpha > envelope.max_abs_im + kTwoPi))
    throw ParameterDomainError(std::string(who) + ": alpha = " + num(alpha) + " must exceed max|Im| + 2pi = " +
                               num(envelope.max_abs_im + kTwoPi));
}

}  // namespace

void SpectralEnvelope::validate() const
{
  if (!(min_abs_re > 0.0) || !std::isfinite(min_abs_re))
    throw ParameterDomainError("spectral envelope: min |Re| must be positive, got " + num(min_abs_re));
  if (!(max_abs_re >= min_abs_re) || !std::isfinite(max_abs_re))
    throw ParameterDomainError("spectral envelope: max |Re| must be >= min |Re|");
  if (!(max_abs_im >= 0.0) || !std::isfinite(max_abs_im))
    throw ParameterDomainError("spectral envelope: max |Im| must be finite and >= 0");
}

double d_max(const SpectralEnvelope& envelope, double alpha)
{
  envelope.validate();
  require_alpha_window(envelope, alpha, "d_max");
  return std::atan((alpha - envelope.max_abs_im - kTwoPi) / (envelope.max_abs_re + std::numbers::ln2));
}

double d_select(const SpectralEnvelope& envelope, double alpha, double safety)
{
  if (!(safety > 0.0 && safety < 1.0))
    throw ParameterDomainError("d_select: safety must lie in the open interval (0, 1), got " + num(safety));
  return safety * d_max(envelope, alpha);
}

double h_select(double d, int n)
{
  if (!(d > 0.0)) throw ParameterDomainError("h_select: d must be positive, got " + num(d));
  if (!(n > 1.0 / (4.0 * d)))
    throw ParameterDomainError("h_select: n = " + std::to_string(n) + " must exceed 1/(4d) = " + num(1.0 / (4.0 * d)));
  return std::log(4.0 * d * n) / n;
}

BalanceSides alpha_balance(const SpectralEnvelope& envelope, double k, double alpha)
{
  const double ratio =
      (alpha - envelope.max_abs_im - kTwoPi) / (envelope.min_abs_re + std::numbers::ln2);
  return {std::sinh(std::numbers::pi / k * std::atan(ratio)), envelope.min_abs_re / alpha};
}

double solve_alpha(const SpectralEnvelope& envelope, double k)
{
  envelope.validate();
  if (!(k > 0.0) || !std::isfinite(k)) throw ParameterDomainError("solve_alpha: k must be positive, got " + num(k));

  // LHS - RHS is increasing on (im + 2pi, inf), negative at the left end.
  auto residual = [&](double alpha) {
    const auto s = alpha_balance(envelope, k, alpha);
    return s.lhs - s.rhs;
  };

  const double left = envelope.max_abs_im + kTwoPi;
  double lo = left + 1e-12 * std::max(1.0, left);
  double span = 1.0;
  double hi = left + span;
  int expansions = 0;
  while (residual(hi) <= 0.0) {
    lo = hi;
    span *= 2.0;
    hi = left + span;
    if (++expansions > 1000000) throw NumericalError("solve_alpha: failed to bracket the root");
  }
  // Bisect down to adjacent doubles.
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (residual(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double delta_select(const SpectralEnvelope& envelope, double alpha, double fraction)
{
  if (!(alpha > 0.0)) throw ParameterDomainError("delta_select: alpha must be positive");
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ParameterDomainError("delta_select: fraction must lie in the open interval (0, 1), got " + num(fraction));
  return fraction * envelope.min_abs_re / alpha;
}

QuadParams make_params(const SpectralEnvelope& envelope, int n, const ParamOptions& options)
{
  envelope.validate();
  if (n < 1) throw ParameterDomainError("make_params: n must be >= 1, got " + std::to_string(n));
  if (!(options.k > 0.0)) throw ParameterDomainError("make_params: k must be positive");

  QuadParams p;
  p.n = n;
  p.k = options.k;
  p.alpha = options.alpha ? *options.alpha : solve_alpha(envelope, options.k);
  if (!(p.alpha > envelope.max_abs_im))
    throw ParameterDomainError("make_params: alpha = " + num(p.alpha) + " must exceed max|Im| = " +
                               num(envelope.max_abs_im));

  const bool alpha_ok = p.alpha > envelope.max_abs_im + kTwoPi;
  if (options.d) {
    if (!(*options.d > 0.0)) throw ParameterDomainError("make_params: d must be positive");
    p.d = *options.d;
    p.within_bound_window = alpha_ok && p.d < d_max(envelope, p.alpha);
  } else {
    p.d = d_select(envelope, p.alpha, options.safety);
    p.within_bound_window = alpha_ok;
  }
  p.h = h_select(p.d, n);
  p.N = std::max(2, static_cast<int>(std::lround(options.k * n)));
  p.delta = delta_select(envelope, p.alpha, options.delta_fraction);
  return p;
}

}  // namespace rectexp
