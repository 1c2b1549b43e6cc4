#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rectexp/test_matrices.hpp"

namespace rectexp {

enum class BenchMethod
{
  Proposed,     // I_alpha by DE plus J_alpha by Gauss-Legendre
  DeI,          // DE part alone, measured against the exact I_alpha
  LaguerreI,    // Gauss-Laguerre part alone, measured against the exact I_alpha
  Talbot,       // optimized Talbot contour
  FixedTalbot,  // fixed Talbot contour
  TatsuokaDe    // tag reserved for externally produced rows; never run here
};

std::string method_tag(BenchMethod method);
/// Throws ParameterDomainError for unknown tags.
BenchMethod parse_method_tag(const std::string& tag);

struct ConvergenceRecord
{
  std::string matrix;  // not part of the CSV row; selects the output file
  BenchMethod method = BenchMethod::Proposed;
  int n = 0;           // DE half-count, or the node count M for Talbot
  int N = 0;           // Gauss-Legendre or Gauss-Laguerre order
  double k = 0.0;
  double alpha = 0.0;
  double d = 0.0;
  long resolvents = 0;
  double err2 = 0.0;   // NaN when the method failed
  std::int64_t wall_ns = 0;

  bool operator==(const ConvergenceRecord&) const = default;
};

struct BenchMatrix
{
  std::string name;
  SpectrumRegion region;
  std::optional<std::uint64_t> seed;  // overrides BenchConfig::seed
};

/// One sweep. Grids are crossed: every listed value of every list field.
struct BenchRun
{
  BenchMethod method = BenchMethod::Proposed;
  std::vector<std::string> matrices;  // empty = all matrices
  std::vector<int> n;                 // proposed, de_I
  std::vector<int> orders;            // talbot and fixed_talbot (M), laguerre_I (N)
  std::vector<double> k = {4.0};      // N = round(k n)
  std::vector<double> alpha_k;        // alpha = alpha_{k'}; empty = same k as the run
  std::vector<double> alpha;          // explicit alpha; replaces alpha_k
  std::vector<double> safety = {0.99};
  std::vector<double> d;              // explicit d; replaces safety
  double fixed_scale = 32.0;
};

struct BenchConfig
{
  std::uint64_t seed = 3;
  int m = 20;
  bool complex_mode = false;
  unsigned threads = 1;  // 0 = hardware concurrency
  bool timing = false;   // wall_ns stays 0 unless set
  std::vector<BenchMatrix> matrices;
  std::vector<BenchRun> runs;
};

/// JSON configuration, e.g.
///   {"seed": 3, "m": 20, "threads": 4,
///    "matrices": [{"name": "o3", "region": "omega3"}],
///    "runs": [{"method": "proposed", "n": {"from": 10, "to": 60, "step": 5}, "k": [4, 8]},
///             {"method": "talbot", "M": [8, 16, 32]}]}
/// A region is a preset name or {"re": [lo, hi], "im": [lo, hi]}.
BenchConfig parse_bench_config(const std::string& json_text);
BenchConfig load_bench_config(const std::filesystem::path& path);

/// One record per (matrix, run, grid point), in configuration order. Parameters
/// are chosen from each region's representative envelope. Failures of a single
/// grid point are recorded with err2 = NaN.
std::vector<ConvergenceRecord> run_convergence(const BenchConfig& config);

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);
std::vector<ConvergenceRecord> parse_csv(std::istream& in);

/// Writes `path` and the companion `<stem>_plot.py`. Throws ParameterDomainError
/// on empty input and IoError on write failure.
void emit(const std::vector<ConvergenceRecord>& records, const std::filesystem::path& path);

/// Emits to `path` when all records share one matrix, otherwise to
/// `<stem>_<matrix><ext>` per matrix. Returns the CSV paths written.
std::vector<std::filesystem::path> emit_by_matrix(const std::vector<ConvergenceRecord>& records,
                                                  const std::filesystem::path& path);

}  // namespace rectexp
