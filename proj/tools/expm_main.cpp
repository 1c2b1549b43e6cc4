#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rectexp/bench.hpp"
#include "rectexp/errors.hpp"
#include "rectexp/mat_exp.hpp"
#include "rectexp/matrix_market.hpp"
#include "rectexp/params.hpp"
#include "rectexp/test_matrices.hpp"

using namespace rectexp;

namespace {

enum ExitCode
{
  kOk = 0,
  kDomain = 2,
  kNumerical = 3,
  kIo = 4
};

struct EnvelopeArgs
{
  std::optional<double> im;
  std::optional<double> re_min;
  std::optional<double> re_max;

  void add(CLI::App* cmd, bool required)
  {
    auto* a = cmd->add_option("--im", im, "Bound on max |Im lambda|");
    auto* b = cmd->add_option("--re-min", re_min, "Lower bound on |Re lambda| (sign ignored)");
    auto* c = cmd->add_option("--re-max", re_max, "Upper bound on |Re lambda| (sign ignored)");
    if (required) {
      a->required();
      b->required();
      c->required();
    } else {
      a->needs(b, c);
      b->needs(a, c);
      c->needs(a, b);
    }
  }

  // |Re| bounds may be given with either sign and in either order.
  std::optional<SpectralEnvelope> envelope() const
  {
    if (!im) return std::nullopt;
    double lo = std::abs(*re_min), hi = std::abs(*re_max);
    if (lo > hi) std::swap(lo, hi);
    SpectralEnvelope env{*im, lo, hi};
    env.validate();
    return env;
  }
};

void print_params(const QuadParams& p)
{
  std::printf("alpha %.10g\nd %.10g\nh %.10g\nn %d\nN %d\nk %.10g\ndelta %.10g\n", p.alpha, p.d, p.h, p.n, p.N,
              p.k, p.delta);
  if (!p.within_bound_window) std::printf("note: parameters lie outside the error-bound window\n");
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Matrix exponential by quadrature on a rectangular contour"};
  app.require_subcommand(1);

  // compute
  auto* compute = app.add_subcommand("compute", "exp(A) or exp(A) b for a Matrix Market input");
  std::string matrix_path, out_path, action_path;
  int n = 60;
  double k = kDefaultK, shift = 0.0, safety = kDefaultSafety;
  std::optional<double> alpha, d;
  unsigned threads = 1;
  bool real_shortcut = false, quiet = false;
  EnvelopeArgs compute_env;
  compute->add_option("--matrix", matrix_path, "Input matrix (Matrix Market)")->required();
  compute->add_option("--out", out_path, "Output file (Matrix Market)")->required();
  compute->add_option("--n", n, "DE half-count")->required();
  compute->add_option("--k", k, "Ratio N/n of Gauss-Legendre to DE nodes")->required();
  compute->add_option("--alpha", alpha, "Contour half-height (default: balance equation)");
  compute->add_option("--d", d, "DE strip half-width (default: safety * d_max)");
  compute->add_option("--safety", safety, "Fraction of d_max used for d");
  compute->add_option("--shift", shift, "Compute e^shift exp(A - shift I)");
  compute->add_option("--action", action_path, "Vector b (Matrix Market, m x 1); computes exp(A) b");
  compute->add_option("--threads", threads, "Worker threads, 0 = all cores");
  compute->add_flag("--real-shortcut", real_shortcut, "Halve the DE solves for real A and b");
  compute->add_flag("--quiet", quiet, "Do not print parameters");
  compute_env.add(compute, false);

  // gen
  auto* gen = app.add_subcommand("gen", "Random test matrix with eigenvalues in a preset region");
  int gen_m = 20;
  std::string region_name, gen_out, eig_out, ref_out;
  std::uint64_t seed = 0;
  bool complex_mode = false;
  gen->add_option("--m", gen_m, "Dimension")->required();
  gen->add_option("--region", region_name, "omega1..omega4")->required();
  gen->add_option("--seed", seed, "RNG seed")->required();
  gen->add_option("--out", gen_out, "Output matrix (Matrix Market)")->required();
  gen->add_option("--eig-out", eig_out, "Also write the eigenvalues as an m x 1 array");
  gen->add_option("--ref-out", ref_out, "Also write the exact exponential");
  gen->add_flag("--complex", complex_mode, "Free complex eigenvalues (complex A)");

  // bench
  auto* bench = app.add_subcommand("bench", "Convergence sweeps to CSV plus a plot script");
  std::string config_path, csv_path;
  std::optional<unsigned> bench_threads;
  bench->add_option("--config", config_path, "JSON configuration")->required();
  bench->add_option("--out", csv_path, "Output CSV")->required();
  bench->add_option("--threads", bench_threads, "Override the configured thread count");

  // params
  auto* params = app.add_subcommand("params", "Print alpha, d and h for a spectral envelope");
  EnvelopeArgs params_env;
  double params_k = kDefaultK, params_safety = kDefaultSafety;
  int params_n = 60;
  params_env.add(params, true);
  params->add_option("--k", params_k, "Ratio N/n")->required();
  params->add_option("--n", params_n, "DE half-count used for h");
  params->add_option("--safety", params_safety, "Fraction of d_max used for d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kDomain;
  }

  try {
    if (*compute) {
      const ComplexMatrix a = read_matrix_market(std::filesystem::path(matrix_path));
      ExpmOptions options;
      options.threads = threads;
      options.real_shortcut = real_shortcut;
      if (auto env = compute_env.envelope()) {
        // The envelope describes A; the quadrature sees A - shift I.
        env->min_abs_re += shift;
        env->max_abs_re += shift;
        env->validate();
        options.envelope = env;
      }
      AutoParams ap{n, {}};
      ap.options.k = k;
      ap.options.safety = safety;
      ap.options.alpha = alpha;
      ap.options.d = d;
      MatExpResult r;
      if (!action_path.empty()) {
        const ComplexMatrix b = read_matrix_market(std::filesystem::path(action_path));
        if (b.cols() != 1) throw ParameterDomainError("--action expects an m x 1 vector");
        r = expm_action_shifted(a, b.data(), shift, ap, options);
      } else {
        r = expm_shifted(a, shift, ap, options);
      }
      write_matrix_market(std::filesystem::path(out_path), r.value);
      if (!quiet) {
        print_params(r.params);
        std::printf("resolvents %ld\n", r.resolvent_count);
      }
      for (const auto& w : r.diagnostics.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    } else if (*gen) {
      const TestMatrix tm = gen_test_matrix(gen_m, SpectrumRegion::parse(region_name), seed, complex_mode);
      write_matrix_market(std::filesystem::path(gen_out), tm.a);
      if (!eig_out.empty())
        write_matrix_market(std::filesystem::path(eig_out), ComplexMatrix::column(tm.eigenvalues));
      if (!ref_out.empty())
        write_matrix_market(std::filesystem::path(ref_out), reference_expm(tm.eigenvalues, tm.u));
    } else if (*bench) {
      BenchConfig cfg = load_bench_config(config_path);
      if (bench_threads) cfg.threads = *bench_threads;
      const auto records = run_convergence(cfg);
      for (const auto& p : emit_by_matrix(records, csv_path)) std::printf("%s\n", p.string().c_str());
    } else if (*params) {
      const SpectralEnvelope env = *params_env.envelope();
      ParamOptions opts;
      opts.k = params_k;
      opts.safety = params_safety;
      const QuadParams p = make_params(env, params_n, opts);
      print_params(p);
      std::printf("d_max %.10g\n", d_max(env, p.alpha));
    }
  } catch (const ParameterDomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDomain;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumerical;
  }
  return kOk;
}
