#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rectexp/linalg.hpp"
#include "rectexp/params.hpp"

namespace rectexp {

struct ExpmOptions
{
  // Real A and right-hand side only: one resolvent family plus an entrywise
  // imaginary part for the DE sum, 2n+1 solves instead of 4n+2.
  bool real_shortcut = false;
  // Real A only: drop the computed imaginary part of the result.
  bool truncate_imag = false;
  // Worker threads for node evaluations; 0 uses hardware concurrency.
  unsigned threads = 1;
  // When set, every shift is checked against the envelope before solving.
  std::optional<SpectralEnvelope> envelope;
};

struct ExpmDiagnostics
{
  // Smallest distance from a resolvent shift to the envelope rectangle; NaN without an envelope.
  double min_pole_margin;
  // Frobenius norm of the imaginary part of the result for real input; NaN otherwise.
  double imag_norm;
  double shift = 0.0;
  bool real_shortcut = false;
  std::vector<std::string> warnings;
};

struct MatExpResult
{
  ComplexMatrix value;  // m x m, or m x 1 for the action form
  long resolvent_count;
  QuadParams params;
  ExpmDiagnostics diagnostics;
};

/// Automatic parameters: envelope from ExpmOptions::envelope or, failing
/// that, from Gershgorin discs.
struct AutoParams
{
  int n;
  ParamOptions options = {};
};

/// Spectral envelope from the tighter of the row and column Gershgorin
/// discs. Throws ParameterDomainError if the discs reach Re >= 0.
SpectralEnvelope gershgorin_envelope(const ComplexMatrix& a);

/// (e^{-x}/2 pi i)(e^{i alpha} ((x - i alpha)I + A)^{-1} - e^{-i alpha} ((x + i alpha)I + A)^{-1}) B
ComplexMatrix f_alpha_mat(const ComplexMatrix& a, double alpha, double x, const ComplexMatrix& rhs);
ComplexMatrix f_alpha_mat(const ComplexMatrix& a, double alpha, double x);

/// (alpha/2 pi) e^{i alpha x} (i alpha x I - A)^{-1} B
ComplexMatrix g_alpha_mat(const ComplexMatrix& a, double alpha, double x, const ComplexMatrix& rhs);
ComplexMatrix g_alpha_mat(const ComplexMatrix& a, double alpha, double x);

/// DE-trapezoid sum for the semi-infinite part alone (4n+2 solves, or 2n+1 with the real shortcut).
MatExpResult expm_de_part(const ComplexMatrix& a, const QuadParams& params, const ExpmOptions& options = {});

/// Gauss-Legendre sum for the finite oscillatory part alone (N solves).
MatExpResult expm_gl_part(const ComplexMatrix& a, const QuadParams& params, const ExpmOptions& options = {});

MatExpResult expm(const ComplexMatrix& a, const QuadParams& params, const ExpmOptions& options = {});
MatExpResult expm(const ComplexMatrix& a, const AutoParams& params, const ExpmOptions& options = {});

/// exp(A) b with one solve per resolvent; `value` is m x 1.
MatExpResult expm_action(const ComplexMatrix& a, std::span<const Complex> b, const QuadParams& params,
                         const ExpmOptions& options = {});
MatExpResult expm_action(const ComplexMatrix& a, std::span<const Complex> b, const AutoParams& params,
                         const ExpmOptions& options = {});

/// e^sigma exp(A - sigma I). The envelope in options, if any, must describe A - sigma I.
MatExpResult expm_shifted(const ComplexMatrix& a, double sigma, const QuadParams& params,
                          const ExpmOptions& options = {});
MatExpResult expm_shifted(const ComplexMatrix& a, double sigma, const AutoParams& params,
                          const ExpmOptions& options = {});

/// e^sigma exp(A - sigma I) b.
MatExpResult expm_action_shifted(const ComplexMatrix& a, std::span<const Complex> b, double sigma,
                                 const QuadParams& params, const ExpmOptions& options = {});
MatExpResult expm_action_shifted(const ComplexMatrix& a, std::span<const Complex> b, double sigma,
                                 const AutoParams& params, const ExpmOptions& options = {});

struct BoundConstants
{
  double ell;  // min_i ((alpha - |Im l_i| - 2pi) cos d - (|Re l_i| + log 2) sin d)
  double rho;  // eta/alpha - delta + sqrt((eta/alpha - delta)^2 + 1)
  double C;    // gamma/(2 pi delta^m) (((rho + 1/rho)/2)||I|| + ||A||/alpha)^{m-1} e^{eta}

  /// (64 C / 15) rho^{-2(N-1)} / (rho^2 - 1)
  double gl_bound(int order) const;
};

/// Constants from the exact eigenvalues (diagnostic mode).
BoundConstants bound_constants(const ComplexMatrix& a, std::span<const Complex> eigenvalues, const QuadParams& params,
                               NormKind kind = NormKind::Two);
/// Constants with the envelope corners standing in for the eigenvalues.
BoundConstants bound_constants(const ComplexMatrix& a, const SpectralEnvelope& envelope, const QuadParams& params,
                               NormKind kind = NormKind::Two);

}  // namespace rectexp
