#include "rectexp/mat_exp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rectexp/errors.hpp"
#include "rectexp/parallel.hpp"
#include "rectexp/quad_rules.hpp"

namespace rectexp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Margins below this fraction of alpha are reported.
constexpr double kMarginWarnFraction = 1e-8;

void require_square(const ComplexMatrix& a, const char* who)
{
  if (!a.square() || a.rows() == 0) throw ParameterDomainError(std::string(who) + ": matrix must be square and non-empty");
}

ComplexMatrix shifted_solve(const ComplexMatrix& a, Complex shift, const ComplexMatrix& rhs)
{
  try {
    return solve_shifted(a, shift, rhs);
  } catch (const SingularMatrixError&) {
    std::ostringstream os;
    os << "resolvent shift " << shift << " is numerically an eigenvalue (pole proximity)";
    throw SingularMatrixError(os.str());
  }
}

// Distance from p to the rectangle [-re_max, -re_min] x [-im, im].
double envelope_distance(const SpectralEnvelope& e, Complex p)
{
  const double dx = std::max({-e.max_abs_re - p.real(), 0.0, p.real() + e.min_abs_re});
  const double dy = std::max(std::abs(p.imag()) - e.max_abs_im, 0.0);
  return std::hypot(dx, dy);
}

struct Plan
{
  bool with_de;
  bool with_gl;
};

void require_params(const QuadParams& p, const Plan& plan)
{
  if (!(p.alpha > 0.0)) throw ParameterDomainError("expm: alpha must be positive");
  if (plan.with_de && (p.n < 1 || !(p.h > 0.0))) throw ParameterDomainError("expm: need n >= 1 and h > 0");
  if (plan.with_gl && p.N < 1) throw ParameterDomainError("expm: Gauss-Legendre order must be >= 1");
}

MatExpResult run(const ComplexMatrix& a, const ComplexMatrix& rhs, const QuadParams& params, const ExpmOptions& opt,
                 Plan plan)
{
  require_square(a, "expm");
  require_params(params, plan);
  if (rhs.rows() != a.rows()) throw ParameterDomainError("expm: right-hand side has the wrong number of rows");
  const bool real_input = a.is_real() && rhs.is_real();
  if (opt.real_shortcut && !real_input)
    throw ParameterDomainError("expm: the real shortcut needs a real matrix and right-hand side");
  if (opt.truncate_imag && !real_input)
    throw ParameterDomainError("expm: imaginary-part truncation needs a real matrix and right-hand side");

  const double alpha = params.alpha;
  const std::vector<DeNode> de = plan.with_de ? de_rule(params.n, params.h) : std::vector<DeNode>{};
  const GaussRule gl = plan.with_gl ? gauss_legendre(params.N) : GaussRule{GaussKind::Legendre, {}, {}};

  MatExpResult result{ComplexMatrix{}, 0, params, ExpmDiagnostics{kNaN, kNaN, 0.0, opt.real_shortcut, {}}};
  if (plan.with_de) result.resolvent_count += opt.real_shortcut ? 2L * params.n + 1 : 4L * params.n + 2;
  if (plan.with_gl) result.resolvent_count += params.N;

  if (opt.envelope) {
    opt.envelope->validate();
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& node : de) {
      margin = std::min(margin, envelope_distance(*opt.envelope, Complex(-node.x, alpha)));
      margin = std::min(margin, envelope_distance(*opt.envelope, Complex(-node.x, -alpha)));
    }
    for (double t : gl.nodes) margin = std::min(margin, envelope_distance(*opt.envelope, Complex(0.0, alpha * t)));
    result.diagnostics.min_pole_margin = margin;
    if (margin < kMarginWarnFraction * alpha) {
      std::ostringstream os;
      os << "resolvent shift within " << margin << " of the spectral envelope";
      result.diagnostics.warnings.push_back(os.str());
    }
  }

  const Complex phase = std::polar(1.0, alpha);
  const std::size_t de_count = de.size();
  auto term = [&](std::size_t i) -> ComplexMatrix {
    if (i < de_count) {
      const DeNode& node = de[i];
      const double scale = node.w * std::exp(-node.x);
      if (scale == 0.0) return ComplexMatrix(rhs.rows(), rhs.cols());
      if (opt.real_shortcut) {
        ComplexMatrix s = shifted_solve(a, Complex(node.x, -alpha), rhs);
        s *= phase;
        ComplexMatrix t = imag_part(s);
        t *= scale / kPi;
        return t;
      }
      ComplexMatrix t = f_alpha_mat(a, alpha, node.x, rhs);
      t *= node.w;
      return t;
    }
    const std::size_t j = i - de_count;
    ComplexMatrix t = g_alpha_mat(a, alpha, gl.nodes[j], rhs);
    t *= gl.weights[j];
    return t;
  };

  result.value = deterministic_sum<ComplexMatrix>(de_count + gl.nodes.size(), term, opt.threads);
  if (real_input) {
    result.diagnostics.imag_norm = norm_fro(imag_part(result.value));
    if (opt.truncate_imag) result.value = real_part(result.value);
  }
  return result;
}

QuadParams auto_params(const ComplexMatrix& a, const AutoParams& ap, ExpmOptions& opt)
{
  require_square(a, "expm");
  if (!opt.envelope) opt.envelope = gershgorin_envelope(a);
  return make_params(*opt.envelope, ap.n, ap.options);
}

ComplexMatrix shift_matrix(const ComplexMatrix& a, double sigma)
{
  require_square(a, "expm_shifted");
  if (!std::isfinite(sigma)) throw ParameterDomainError("expm_shifted: shift must be finite");
  ComplexMatrix s = a;
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) -= sigma;
  return s;
}

void finish_shift(MatExpResult& r, double sigma)
{
  r.value *= std::exp(sigma);
  r.diagnostics.shift = sigma;
  if (std::isfinite(r.diagnostics.imag_norm)) r.diagnostics.imag_norm *= std::exp(sigma);
  if (sigma > 0.0) {
    std::ostringstream os;
    os << "shift " << sigma << " amplifies the absolute quadrature error by e^sigma = " << std::exp(sigma);
    r.diagnostics.warnings.push_back(os.str());
  }
}

}  // namespace

SpectralEnvelope gershgorin_envelope(const ComplexMatrix& a)
{
  require_square(a, "gershgorin_envelope");
  const std::size_t m = a.rows();

  auto discs = [&](bool by_rows, SpectralEnvelope& out) {
    out = {0.0, std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < m; ++i) {
      double radius = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) radius += std::abs(by_rows ? a(i, j) : a(j, i));
      const Complex c = a(i, i);
      if (c.real() + radius >= 0.0) return false;
      out.max_abs_im = std::max(out.max_abs_im, std::abs(c.imag()) + radius);
      out.min_abs_re = std::min(out.min_abs_re, -c.real() - radius);
      out.max_abs_re = std::max(out.max_abs_re, -c.real() + radius);
    }
    return true;
  };

  SpectralEnvelope rows{}, cols{};
  const bool rows_ok = discs(true, rows);
  const bool cols_ok = discs(false, cols);
  if (!rows_ok && !cols_ok)
    throw ParameterDomainError(
        "gershgorin_envelope: spectrum not certifiably in the left half-plane (a Gershgorin disc reaches Re >= 0); "
        "supply a spectral envelope explicitly");
  SpectralEnvelope e = rows_ok ? rows : cols;
  if (rows_ok && cols_ok) {
    e.max_abs_im = std::min(rows.max_abs_im, cols.max_abs_im);
    e.min_abs_re = std::max(rows.min_abs_re, cols.min_abs_re);
    e.max_abs_re = std::min(rows.max_abs_re, cols.max_abs_re);
  }
  e.min_abs_re = std::max(e.min_abs_re, std::numeric_limits<double>::epsilon());
  return e;
}

ComplexMatrix f_alpha_mat(const ComplexMatrix& a, double alpha, double x, const ComplexMatrix& rhs)
{
  require_square(a, "f_alpha_mat");
  ComplexMatrix plus = shifted_solve(a, Complex(x, -alpha), rhs);
  ComplexMatrix minus = shifted_solve(a, Complex(x, alpha), rhs);
  plus *= std::polar(1.0, alpha);
  minus *= std::polar(1.0, -alpha);
  plus -= minus;
  plus *= std::exp(-x) / (2.0 * kPi * kI);
  return plus;
}

ComplexMatrix f_alpha_mat(const ComplexMatrix& a, double alpha, double x)
{
  return f_alpha_mat(a, alpha, x, ComplexMatrix::identity(a.rows()));
}

ComplexMatrix g_alpha_mat(const ComplexMatrix& a, double alpha, double x, const ComplexMatrix& rhs)
{
  require_square(a, "g_alpha_mat");
  // (i alpha x I - A)^{-1} = -((-i alpha x) I + A)^{-1}
  ComplexMatrix s = shifted_solve(a, Complex(0.0, -alpha * x), rhs);
  s *= -alpha / (2.0 * kPi) * std::exp(kI * alpha * x);
  return s;
}

ComplexMatrix g_alpha_mat(const ComplexMatrix& a, double alpha, double x)
{
  return g_alpha_mat(a, alpha, x, ComplexMatrix::identity(a.rows()));
}

MatExpResult expm_de_part(const ComplexMatrix& a, const QuadParams& params, const ExpmOptions& options)
{
  require_square(a, "expm_de_part");
  return run(a, ComplexMatrix::identity(a.rows()), params, options, {true, false});
}

MatExpResult expm_gl_part(const ComplexMatrix& a, const QuadParams& params, const ExpmOptions& options)
{
  require_square(a, "expm_gl_part");
  return run(a, ComplexMatrix::identity(a.rows()), params, options, {false, true});
}

MatExpResult expm(const ComplexMatrix& a, const QuadParams& params, const ExpmOptions& options)
{
  require_square(a, "expm");
  return run(a, ComplexMatrix::identity(a.rows()), params, options, {true, true});
}

MatExpResult expm(const ComplexMatrix& a, const AutoParams& params, const ExpmOptions& options)
{
  ExpmOptions opt = options;
  const QuadParams p = auto_params(a, params, opt);
  return expm(a, p, opt);
}

MatExpResult expm_action(const ComplexMatrix& a, std::span<const Complex> b, const QuadParams& params,
                         const ExpmOptions& options)
{
  require_square(a, "expm_action");
  if (b.size() != a.rows()) throw ParameterDomainError("expm_action: vector length does not match the matrix");
  return run(a, ComplexMatrix::column(b), params, options, {true, true});
}

MatExpResult expm_action(const ComplexMatrix& a, std::span<const Complex> b, const AutoParams& params,
                         const ExpmOptions& options)
{
  ExpmOptions opt = options;
  const QuadParams p = auto_params(a, params, opt);
  return expm_action(a, b, p, opt);
}

MatExpResult expm_shifted(const ComplexMatrix& a, double sigma, const QuadParams& params, const ExpmOptions& options)
{
  MatExpResult r = expm(shift_matrix(a, sigma), params, options);
  finish_shift(r, sigma);
  return r;
}

namespace {

ExpmOptions shifted_options(const ComplexMatrix& shifted, double sigma, const ExpmOptions& options)
{
  ExpmOptions opt = options;
  if (!opt.envelope) {
    try {
      opt.envelope = gershgorin_envelope(shifted);
    } catch (const ParameterDomainError&) {
      if (sigma == 0.0) throw;
      std::ostringstream os;
      os << "expm_shifted: shift " << sigma << " does not move the Gershgorin discs into Re < 0";
      throw ParameterDomainError(os.str());
    }
  }
  return opt;
}

}  // namespace

MatExpResult expm_shifted(const ComplexMatrix& a, double sigma, const AutoParams& params, const ExpmOptions& options)
{
  const ComplexMatrix shifted = shift_matrix(a, sigma);
  MatExpResult r = expm(shifted, params, shifted_options(shifted, sigma, options));
  finish_shift(r, sigma);
  return r;
}

MatExpResult expm_action_shifted(const ComplexMatrix& a, std::span<const Complex> b, double sigma,
                                 const QuadParams& params, const ExpmOptions& options)
{
  MatExpResult r = expm_action(shift_matrix(a, sigma), b, params, options);
  finish_shift(r, sigma);
  return r;
}

MatExpResult expm_action_shifted(const ComplexMatrix& a, std::span<const Complex> b, double sigma,
                                 const AutoParams& params, const ExpmOptions& options)
{
  const ComplexMatrix shifted = shift_matrix(a, sigma);
  MatExpResult r = expm_action(shifted, b, params, shifted_options(shifted, sigma, options));
  finish_shift(r, sigma);
  return r;
}

double BoundConstants::gl_bound(int order) const
{
  return 64.0 * C / 15.0 * std::pow(rho, -2.0 * (order - 1)) / (rho * rho - 1.0);
}

namespace {

BoundConstants constants_from(double norm_a, std::size_t m, double max_im, double ell, double eta,
                              const QuadParams& p, NormKind kind)
{
  if (!(p.alpha > max_im + 2.0 * kPi))
    throw ParameterDomainError("bound_constants: alpha must exceed max|Im lambda| + 2pi");
  if (ell < -1e-12 * p.alpha) throw ParameterDomainError("bound_constants: d lies outside the analyticity window");
  const double r = eta / p.alpha;
  if (!(p.delta > 0.0 && p.delta < r))
    throw ParameterDomainError("bound_constants: delta must lie in (0, eta/alpha)");
  const double s = r - p.delta;
  const double rho = s + std::sqrt(s * s + 1.0);
  const double dm = static_cast<double>(m);
  const double gamma = kind == NormKind::Two ? 1.0 : std::sqrt(dm);
  const double norm_id = kind == NormKind::Two ? 1.0 : std::sqrt(dm);
  const double base = 0.5 * (rho + 1.0 / rho) * norm_id + norm_a / p.alpha;
  const double c = gamma / (2.0 * kPi * std::pow(p.delta, dm)) * std::pow(base, dm - 1.0) * std::exp(eta);
  return {std::max(ell, 0.0), rho, c};
}

double ell_term(double alpha, double d, double abs_im, double abs_re)
{
  return (alpha - abs_im - 2.0 * kPi) * std::cos(d) - (abs_re + std::numbers::ln2) * std::sin(d);
}

}  // namespace

BoundConstants bound_constants(const ComplexMatrix& a, std::span<const Complex> eigenvalues, const QuadParams& params,
                               NormKind kind)
{
  require_square(a, "bound_constants");
  if (eigenvalues.size() != a.rows()) throw ParameterDomainError("bound_constants: need one eigenvalue per row");
  double ell = std::numeric_limits<double>::infinity();
  double eta = std::numeric_limits<double>::infinity();
  double max_im = 0.0;
  for (const Complex& l : eigenvalues) {
    if (!(l.real() < 0.0)) throw ParameterDomainError("bound_constants: eigenvalues must satisfy Re < 0");
    ell = std::min(ell, ell_term(params.alpha, params.d, std::abs(l.imag()), -l.real()));
    eta = std::min(eta, -l.real());
    max_im = std::max(max_im, std::abs(l.imag()));
  }
  return constants_from(norm(a, kind), a.rows(), max_im, ell, eta, params, kind);
}

BoundConstants bound_constants(const ComplexMatrix& a, const SpectralEnvelope& envelope, const QuadParams& params,
                               NormKind kind)
{
  require_square(a, "bound_constants");
  envelope.validate();
  const double ell = ell_term(params.alpha, params.d, envelope.max_abs_im, envelope.max_abs_re);
  return constants_from(norm(a, kind), a.rows(), envelope.max_abs_im, ell, envelope.min_abs_re, params, kind);
}

}  // namespace rectexp
