#pragma once

#include "rectexp/linalg.hpp"

namespace rectexp {

enum class TalbotKind
{
  Optimized,  // contour scale grows in proportion to the node count
  Fixed       // contour scale held constant
};

/// Cotangent contour zeta(theta) = s (-sigma + mu theta cot(a theta) + i nu theta),
/// theta in (-pi, pi), with Weideman's optimized constants
/// (J. A. C. Weideman, "Optimizing Talbot's contours for the inversion of the
/// Laplace transform", SIAM J. Numer. Anal. 44 (2006)):
///   sigma = 0.6122, mu = 0.5017, a = 0.6407, nu = 0.2645, s = M / t.
struct TalbotContour
{
  static constexpr double sigma = 0.6122;
  static constexpr double mu = 0.5017;
  static constexpr double cot_scale = 0.6407;
  static constexpr double nu = 0.2645;

  TalbotKind kind;
  int nodes;     // M
  double scale;  // s

  Complex point(double theta) const;
  Complex derivative(double theta) const;
};

/// Scale of the fixed contour: the optimized contour for 32 nodes at t = 1.
inline constexpr double kFixedTalbotScale = 32.0;

TalbotContour make_talbot_contour(TalbotKind kind, int nodes, double fixed_scale = kFixedTalbotScale);

struct BaselineResult
{
  ComplexMatrix value;
  long resolvent_count;
};

/// Midpoint rule for (1/2 pi i) int e^zeta (zeta I - A)^{-1} zeta'(theta) dtheta
/// on M nodes theta_k = -pi + (k + 1/2) 2 pi / M. For real A the nodes pair
/// up as complex conjugates, so only ceil(M/2) resolvents are computed.
BaselineResult talbot_expm(const ComplexMatrix& a, int nodes, TalbotKind kind, unsigned threads = 1,
                           double fixed_scale = kFixedTalbotScale);

/// Gauss-Laguerre approximation of the semi-infinite integral; the e^{-x}
/// factor of the integrand is carried by the Laguerre weights.
Complex laguerre_I(Complex z, double alpha, int order);
/// Matrix form, 2N resolvents.
BaselineResult laguerre_I(const ComplexMatrix& a, double alpha, int order, unsigned threads = 1);

}  // namespace rectexp
