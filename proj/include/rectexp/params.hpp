#pragma once

#include <optional>

namespace rectexp {

/// Bounds on the spectrum standing in for the exact eigenvalues.
struct SpectralEnvelope
{
  double max_abs_im;  // >= max |Im lambda_i|
  double min_abs_re;  // <= min |Re lambda_i|, strictly positive
  double max_abs_re;  // >= max |Re lambda_i|

  /// Throws ParameterDomainError unless 0 < min_abs_re <= max_abs_re and max_abs_im >= 0.
  void validate() const;

  /// Envelope of a single point z = -re + i*im, the representative-point
  /// protocol used by the benchmark harness.
  static SpectralEnvelope point(double im, double re) { return {im, re, re}; }
};

/// Parameter bundle for one approximation run.
struct QuadParams
{
  double alpha = 0.0;  // half-height of the rectangular contour
  double d = 0.0;      // strip half-width used for the DE spacing
  double h = 0.0;      // DE grid spacing
  int n = 0;           // DE half-count (2n+1 nodes)
  double k = 0.0;      // ratio N/n
  int N = 0;           // Gauss-Legendre order
  double delta = 0.0;  // Bernstein-ellipse margin
  // False when alpha or d were overridden outside the window that the
  // error bounds require; the quadrature is still well defined.
  bool within_bound_window = true;
};

inline constexpr double kDefaultK = 4.0;
inline constexpr double kDefaultSafety = 0.99;
inline constexpr double kDefaultDeltaFraction = 0.5;

/// Largest admissible strip half-width:
/// arctan((alpha - max|Im| - 2pi) / (max|Re| + log 2)).
double d_max(const SpectralEnvelope& envelope, double alpha);

/// safety * d_max with safety in the open interval (0, 1).
double d_select(const SpectralEnvelope& envelope, double alpha, double safety = kDefaultSafety);

/// log(4dn)/n; requires n > 1/(4d).
double h_select(double d, int n);

/// Left- and right-hand sides of the balance equation
///   sinh((pi/k) arctan((alpha - im - 2pi)/(re + log 2))) = re/alpha
/// with re = min_abs_re and im = max_abs_im.
struct BalanceSides
{
  double lhs;
  double rhs;
};
BalanceSides alpha_balance(const SpectralEnvelope& envelope, double k, double alpha);

/// Unique root alpha_k > max_abs_im + 2pi of the balance equation.
double solve_alpha(const SpectralEnvelope& envelope, double k);

/// fraction * min_abs_re / alpha with fraction in (0, 1).
double delta_select(const SpectralEnvelope& envelope, double alpha, double fraction = kDefaultDeltaFraction);

struct ParamOptions
{
  double k = kDefaultK;
  double safety = kDefaultSafety;
  double delta_fraction = kDefaultDeltaFraction;
  std::optional<double> alpha;  // replaces solve_alpha
  std::optional<double> d;      // replaces d_select; may exceed d_max
};

QuadParams make_params(const SpectralEnvelope& envelope, int n, const ParamOptions& options = {});

}  // namespace rectexp
