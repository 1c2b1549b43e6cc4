#pragma once

#include <complex>

#include "rectexp/params.hpp"
#include "rectexp/quad_rules.hpp"

namespace rectexp {

using Complex = std::complex<double>;

/// Nodes closer than this to a pole of f_alpha or g_alpha abort the evaluation.
inline constexpr double kPoleGuard = 1e-12;

/// Integrand of the non-oscillatory semi-infinite part,
///   (1/2 pi i) (e^{i alpha}/(z - i alpha + x) - e^{-i alpha}/(z + i alpha + x)) e^{-x}.
Complex f_alpha(Complex z, double alpha, Complex x);

/// Integrand of the oscillatory part on [-1, 1], (alpha/2 pi) e^{i alpha x}/(i alpha x - z).
Complex g_alpha(Complex z, double alpha, Complex x);

/// DE-trapezoid approximation of the semi-infinite integral.
Complex approx_I(Complex z, double alpha, int n, double h);

/// Same quantity for real z through (1/pi) Im of a single resolvent family.
double approx_I_real(double z, double alpha, int n, double h);

/// Gauss-Legendre approximation of the integral over [-1, 1].
Complex approx_J(Complex z, double alpha, int order);
Complex approx_J(Complex z, double alpha, const GaussRule& legendre);

/// exp(z) for Re z < 0 as approx_I + approx_J. Uses the real-z path when Im z == 0.
Complex exp_scalar(Complex z, const QuadParams& params);

/// K_{z,alpha,d} exp(-2 pi d n / log(4dn)); the true DE error bound is c_d
/// times this value, with c_d depending only on d and not known in closed form.
double bound_I(Complex z, double alpha, double d, int n);

/// K_{z,alpha,d} alone. Throws ParameterDomainError when its denominator is not positive.
double bound_K(Complex z, double alpha, double d);

/// Bernstein-ellipse parameter |Re z|/alpha - delta + sqrt((|Re z|/alpha - delta)^2 + 1).
double rho_z(Complex z, double alpha, double delta);

/// Fully explicit Gauss-Legendre error bound
///   32 e^{|Re z|} / (15 pi delta) * rho^{-2(N-1)} / (rho^2 - 1).
double bound_J(Complex z, double alpha, double delta, int order);

}  // namespace rectexp
