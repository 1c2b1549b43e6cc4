#include "rectexp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "rectexp/baselines.hpp"
#include "rectexp/errors.hpp"
#include "rectexp/mat_exp.hpp"
#include "rectexp/parallel.hpp"
#include "rectexp/scalar_exp.hpp"

namespace rectexp {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader = "method,n,N,k,alpha,d,resolvents,err2,wall_ns";
constexpr int kReferenceMaxOrder = 8192;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::pair<BenchMethod, const char*> kTags[] = {
    {BenchMethod::Proposed, "proposed"},         {BenchMethod::DeI, "de_I"},
    {BenchMethod::LaguerreI, "laguerre_I"},      {BenchMethod::Talbot, "talbot"},
    {BenchMethod::FixedTalbot, "fixed_talbot"},  {BenchMethod::TatsuokaDe, "tatsuoka_de"},
};

[[noreturn]] void config_error(const std::string& what)
{
  throw ParameterDomainError("bench config: " + what);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where)
{
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) config_error("unknown key '" + key + "' in " + where);
  }
}

template <class T>
std::vector<T> number_list(const json& v, const std::string& key)
{
  std::vector<T> out;
  if (v.is_number()) {
    out.push_back(v.get<T>());
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number()) config_error("'" + key + "' entries must be numbers");
      out.push_back(x.get<T>());
    }
  } else if (v.is_object()) {
    check_keys(v, {"from", "to", "step"}, "'" + key + "' range");
    const T from = v.at("from").get<T>();
    const T to = v.at("to").get<T>();
    const T step = v.contains("step") ? v.at("step").get<T>() : T(1);
    if (!(step > T(0))) config_error("'" + key + "' step must be positive");
    for (long i = 0;; ++i) {
      const T x = from + static_cast<T>(i) * step;
      if (x > to) break;
      out.push_back(x);
    }
  } else {
    config_error("'" + key + "' must be a number, a list or a {from, to, step} range");
  }
  if (out.empty()) config_error("'" + key + "' is empty");
  return out;
}

SpectrumRegion parse_region(const json& v)
{
  if (v.is_string()) return SpectrumRegion::parse(v.get<std::string>());
  check_keys(v, {"re", "im"}, "region");
  const auto re = v.at("re").get<std::vector<double>>();
  const auto im = v.at("im").get<std::vector<double>>();
  if (re.size() != 2 || im.size() != 2) config_error("region bounds must be [lo, hi] pairs");
  SpectrumRegion region{re[0], re[1], im[0], im[1]};
  region.validate();
  return region;
}

BenchRun parse_run(const json& v)
{
  check_keys(v, {"method", "matrices", "n", "M", "N", "k", "alpha_k", "alpha", "safety", "d", "fixed_scale"}, "run");
  BenchRun run;
  run.method = parse_method_tag(v.at("method").get<std::string>());
  const bool de_like = run.method == BenchMethod::Proposed || run.method == BenchMethod::DeI;
  const bool talbot = run.method == BenchMethod::Talbot || run.method == BenchMethod::FixedTalbot;
  switch (run.method) {
    case BenchMethod::TatsuokaDe: config_error("method 'tatsuoka_de' is reserved for external results");
    case BenchMethod::Proposed:
    case BenchMethod::DeI:
      if (!v.contains("n")) config_error(method_tag(run.method) + " run needs 'n'");
      run.n = number_list<int>(v.at("n"), "n");
      break;
    case BenchMethod::LaguerreI:
      if (!v.contains("N")) config_error("laguerre_I run needs 'N'");
      run.orders = number_list<int>(v.at("N"), "N");
      break;
    case BenchMethod::Talbot:
    case BenchMethod::FixedTalbot:
      if (!v.contains("M")) config_error(method_tag(run.method) + " run needs 'M'");
      run.orders = number_list<int>(v.at("M"), "M");
      break;
  }
  if (v.contains("matrices")) run.matrices = v.at("matrices").get<std::vector<std::string>>();
  if (!talbot) {
    if (v.contains("k")) run.k = number_list<double>(v.at("k"), "k");
    if (v.contains("alpha_k")) run.alpha_k = number_list<double>(v.at("alpha_k"), "alpha_k");
    if (v.contains("alpha")) run.alpha = number_list<double>(v.at("alpha"), "alpha");
  }
  if (de_like) {
    if (v.contains("safety")) run.safety = number_list<double>(v.at("safety"), "safety");
    if (v.contains("d")) run.d = number_list<double>(v.at("d"), "d");
  }
  if (run.method == BenchMethod::FixedTalbot && v.contains("fixed_scale"))
    run.fixed_scale = v.at("fixed_scale").get<double>();
  for (const char* key : {"n", "M", "N", "k", "alpha_k", "alpha", "safety", "d", "fixed_scale"}) {
    const bool used = (key == std::string("n") && de_like) || (key == std::string("M") && talbot) ||
                      (key == std::string("N") && run.method == BenchMethod::LaguerreI) ||
                      ((key == std::string("k") || key == std::string("alpha_k") || key == std::string("alpha")) &&
                       !talbot) ||
                      ((key == std::string("safety") || key == std::string("d")) && de_like) ||
                      (key == std::string("fixed_scale") && run.method == BenchMethod::FixedTalbot);
    if (v.contains(key) && !used) config_error("key '" + std::string(key) + "' does not apply to " + method_tag(run.method));
  }
  for (int x : run.n)
    if (x < 1) config_error("n must be >= 1");
  for (int x : run.orders)
    if (x < 1) config_error("node counts must be >= 1");
  return run;
}

// Gauss-Legendre rules of doubling order, built once and shared between grid points.
class LegendreCache
{
 public:
  const GaussRule& get(int order)
  {
    std::lock_guard lock(mutex_);
    auto it = rules_.find(order);
    if (it == rules_.end()) it = rules_.emplace(order, gauss_legendre(order)).first;
    return it->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, GaussRule> rules_;
};

struct JSum
{
  Complex value;
  double magnitude;  // sum of |w_i g(x_i)|, the scale of the rounding error
};

JSum sum_J(Complex z, double alpha, const GaussRule& rule)
{
  JSum s{0.0, 0.0};
  for (int i = 0; i < rule.order(); ++i) {
    const Complex term = rule.weights[i] * g_alpha(z, alpha, rule.nodes[i]);
    s.value += term;
    s.magnitude += std::abs(term);
  }
  return s;
}

// exp(lambda) - J_alpha(lambda) with the Gauss-Legendre order doubled until
// consecutive orders agree to within the rounding level of the sum.
ComplexMatrix reference_I(const TestMatrix& tm, double alpha, LegendreCache& cache)
{
  constexpr double kSettle = 64.0 * std::numeric_limits<double>::epsilon();
  std::vector<Complex> j(tm.eigenvalues.size());
  for (int order = 64; order <= kReferenceMaxOrder; order *= 2) {
    const GaussRule& coarse = cache.get(order);
    const GaussRule& fine = cache.get(2 * order);
    bool settled = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const JSum a = sum_J(tm.eigenvalues[i], alpha, coarse);
      const JSum b = sum_J(tm.eigenvalues[i], alpha, fine);
      j[i] = b.value;
      settled = settled && std::abs(a.value - b.value) <= kSettle * b.magnitude;
    }
    if (settled) {
      std::vector<Complex> values(j.size());
      for (std::size_t i = 0; i < j.size(); ++i) values[i] = std::exp(tm.eigenvalues[i]) - j[i];
      return tm.u * ComplexMatrix::diagonal(values) * adjoint(tm.u);
    }
  }
  throw NumericalError("reference for I_alpha did not settle by Gauss-Legendre order " +
                       std::to_string(2 * kReferenceMaxOrder));
}

struct Task
{
  std::size_t matrix = 0;
  BenchMethod method = BenchMethod::Proposed;
  int n = 0;
  int order = 0;
  double k = 0.0;
  std::optional<double> alpha_k;
  std::optional<double> alpha;
  std::optional<double> safety;
  std::optional<double> d;
  double fixed_scale = kFixedTalbotScale;
};

double task_alpha(const Task& t, const SpectralEnvelope& env)
{
  if (t.alpha) return *t.alpha;
  return solve_alpha(env, t.alpha_k.value_or(t.k));
}

ParamOptions task_options(const Task& t, const SpectralEnvelope& env)
{
  ParamOptions o;
  o.k = t.k;
  if (t.safety) o.safety = *t.safety;
  o.alpha = task_alpha(t, env);
  o.d = t.d;
  return o;
}

// Resolvent count a grid point costs, also reported when the method fails.
long planned_resolvents(const Task& t, bool real_matrix)
{
  switch (t.method) {
    case BenchMethod::Proposed:
      return 4L * t.n + 2 + std::max(2L, std::lround(t.k * t.n));
    case BenchMethod::DeI: return 4L * t.n + 2;
    case BenchMethod::LaguerreI: return 2L * t.order;
    case BenchMethod::Talbot:
    case BenchMethod::FixedTalbot: return real_matrix ? (t.order + 1) / 2 : t.order;
    case BenchMethod::TatsuokaDe: break;
  }
  return 0;
}

std::string format_double(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string method_tag(BenchMethod method)
{
  for (const auto& [m, tag] : kTags)
    if (m == method) return tag;
  return "unknown";
}

BenchMethod parse_method_tag(const std::string& tag)
{
  for (const auto& [m, name] : kTags)
    if (tag == name) return m;
  throw ParameterDomainError("unknown method tag '" + tag + "'");
}

BenchConfig parse_bench_config(const std::string& json_text)
{
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  try {
    check_keys(root, {"seed", "m", "complex", "threads", "timing", "matrices", "runs"}, "config");
    BenchConfig cfg;
    if (root.contains("seed")) cfg.seed = root.at("seed").get<std::uint64_t>();
    if (root.contains("m")) cfg.m = root.at("m").get<int>();
    if (root.contains("complex")) cfg.complex_mode = root.at("complex").get<bool>();
    if (root.contains("threads")) cfg.threads = root.at("threads").get<unsigned>();
    if (root.contains("timing")) cfg.timing = root.at("timing").get<bool>();
    if (cfg.m < 1) config_error("m must be >= 1");
    if (!root.contains("matrices") || !root.at("matrices").is_array() || root.at("matrices").empty())
      config_error("'matrices' must be a nonempty list");
    for (const auto& mv : root.at("matrices")) {
      check_keys(mv, {"name", "region", "seed"}, "matrix");
      BenchMatrix bm;
      bm.region = parse_region(mv.at("region"));
      bm.name = mv.contains("name") ? mv.at("name").get<std::string>()
                                    : mv.at("region").get<std::string>();
      if (mv.contains("seed")) bm.seed = mv.at("seed").get<std::uint64_t>();
      for (const auto& other : cfg.matrices)
        if (other.name == bm.name) config_error("duplicate matrix name '" + bm.name + "'");
      cfg.matrices.push_back(bm);
    }
    if (!root.contains("runs") || !root.at("runs").is_array() || root.at("runs").empty())
      config_error("'runs' must be a nonempty list");
    for (const auto& rv : root.at("runs")) {
      BenchRun run = parse_run(rv);
      for (const auto& name : run.matrices) {
        bool found = false;
        for (const auto& bm : cfg.matrices) found = found || bm.name == name;
        if (!found) config_error("run refers to unknown matrix '" + name + "'");
      }
      cfg.runs.push_back(std::move(run));
    }
    return cfg;
  } catch (const json::exception& e) {
    config_error(e.what());
  }
}

BenchConfig load_bench_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_bench_config(text.str());
}

std::vector<ConvergenceRecord> run_convergence(const BenchConfig& config)
{
  std::vector<TestMatrix> matrices;
  std::vector<SpectralEnvelope> envelopes;
  std::vector<ComplexMatrix> references;
  for (const auto& bm : config.matrices) {
    matrices.push_back(gen_test_matrix(config.m, bm.region, bm.seed.value_or(config.seed), config.complex_mode));
    envelopes.push_back(bm.region.representative_envelope());
    references.push_back(reference_expm(matrices.back().eigenvalues, matrices.back().u));
  }

  std::vector<Task> tasks;
  for (const auto& run : config.runs) {
    for (std::size_t mi = 0; mi < config.matrices.size(); ++mi) {
      if (!run.matrices.empty() &&
          std::find(run.matrices.begin(), run.matrices.end(), config.matrices[mi].name) == run.matrices.end())
        continue;
      Task base;
      base.matrix = mi;
      base.method = run.method;
      base.fixed_scale = run.fixed_scale;
      if (run.method == BenchMethod::Talbot || run.method == BenchMethod::FixedTalbot) {
        for (int M : run.orders) {
          Task t = base;
          t.order = M;
          tasks.push_back(t);
        }
        continue;
      }
      for (double k : run.k) {
        std::vector<Task> alpha_choices;
        if (!run.alpha.empty()) {
          for (double a : run.alpha) {
            Task t = base;
            t.alpha = a;
            alpha_choices.push_back(t);
          }
        } else if (!run.alpha_k.empty()) {
          for (double ak : run.alpha_k) {
            Task t = base;
            t.alpha_k = ak;
            alpha_choices.push_back(t);
          }
        } else {
          alpha_choices.push_back(base);
        }
        for (Task t : alpha_choices) {
          t.k = k;
          if (run.method == BenchMethod::LaguerreI) {
            for (int N : run.orders) {
              t.order = N;
              tasks.push_back(t);
            }
            continue;
          }
          std::vector<Task> strip_choices;
          if (!run.d.empty()) {
            for (double d : run.d) {
              Task s = t;
              s.d = d;
              strip_choices.push_back(s);
            }
          } else {
            for (double safety : run.safety) {
              Task s = t;
              s.safety = safety;
              strip_choices.push_back(s);
            }
          }
          for (Task s : strip_choices)
            for (int n : run.n) {
              s.n = n;
              tasks.push_back(s);
            }
        }
      }
    }
  }

  LegendreCache cache;
  std::mutex ref_mutex;
  std::map<std::pair<std::size_t, double>, std::shared_ptr<const ComplexMatrix>> i_refs;
  auto i_reference = [&](std::size_t mi, double alpha) {
    std::lock_guard lock(ref_mutex);
    auto& slot = i_refs[{mi, alpha}];
    if (!slot) slot = std::make_shared<const ComplexMatrix>(reference_I(matrices[mi], alpha, cache));
    return slot;
  };

  auto run_task = [&](std::size_t ti) {
    const Task& t = tasks[ti];
    const TestMatrix& tm = matrices[t.matrix];
    const SpectralEnvelope& env = envelopes[t.matrix];
    ConvergenceRecord r;
    r.matrix = config.matrices[t.matrix].name;
    r.method = t.method;
    r.resolvents = planned_resolvents(t, tm.a.is_real());
    r.err2 = kNaN;
    if (t.method == BenchMethod::Talbot || t.method == BenchMethod::FixedTalbot) r.n = t.order;
    if (t.method == BenchMethod::LaguerreI) r.N = t.order;
    if (t.method == BenchMethod::Proposed || t.method == BenchMethod::DeI) {
      r.n = t.n;
      if (t.method == BenchMethod::Proposed) r.N = std::max(2, static_cast<int>(std::lround(t.k * t.n)));
    }
    if (t.method != BenchMethod::Talbot && t.method != BenchMethod::FixedTalbot) {
      r.k = t.k;
      r.alpha = kNaN;
    }
    try {
      using clock = std::chrono::steady_clock;
      ComplexMatrix value;
      const ComplexMatrix* reference = &references[t.matrix];
      std::shared_ptr<const ComplexMatrix> held;
      clock::duration elapsed{};
      switch (t.method) {
        case BenchMethod::Proposed:
        case BenchMethod::DeI: {
          const ParamOptions opts = task_options(t, env);
          r.alpha = *opts.alpha;
          r.d = opts.d ? *opts.d : d_select(env, r.alpha, opts.safety);
          const QuadParams p = make_params(env, t.n, opts);
          const auto start = clock::now();
          MatExpResult res = t.method == BenchMethod::Proposed ? expm(tm.a, p) : expm_de_part(tm.a, p);
          elapsed = clock::now() - start;
          value = std::move(res.value);
          r.resolvents = res.resolvent_count;
          r.N = t.method == BenchMethod::Proposed ? p.N : 0;
          if (t.method == BenchMethod::DeI) reference = (held = i_reference(t.matrix, r.alpha)).get();
          break;
        }
        case BenchMethod::LaguerreI: {
          r.alpha = task_alpha(t, env);
          const auto start = clock::now();
          BaselineResult res = laguerre_I(tm.a, r.alpha, t.order);
          elapsed = clock::now() - start;
          value = std::move(res.value);
          r.resolvents = res.resolvent_count;
          reference = (held = i_reference(t.matrix, r.alpha)).get();
          break;
        }
        case BenchMethod::Talbot:
        case BenchMethod::FixedTalbot: {
          const TalbotKind kind = t.method == BenchMethod::Talbot ? TalbotKind::Optimized : TalbotKind::Fixed;
          const auto start = clock::now();
          BaselineResult res = talbot_expm(tm.a, t.order, kind, 1, t.fixed_scale);
          elapsed = clock::now() - start;
          value = std::move(res.value);
          r.resolvents = res.resolvent_count;
          break;
        }
        case BenchMethod::TatsuokaDe: throw ParameterDomainError("tatsuoka_de is not run by this harness");
      }
      r.err2 = norm2_estimate(value - *reference).value;
      if (config.timing) r.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count();
    } catch (const std::exception&) {
      r.err2 = kNaN;
    }
    return r;
  };

  return parallel_map<ConvergenceRecord>(tasks.size(), run_task, config.threads);
}

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records)
{
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << method_tag(r.method) << ',' << r.n << ',' << r.N << ',' << format_double(r.k) << ','
        << format_double(r.alpha) << ',' << format_double(r.d) << ',' << r.resolvents << ','
        << format_double(r.err2) << ',' << r.wall_ns << '\n';
  }
}

std::vector<ConvergenceRecord> parse_csv(std::istream& in)
{
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("CSV: missing or unexpected header");
  std::vector<ConvergenceRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) throw IoError("CSV line " + std::to_string(line_no) + ": expected 9 fields");
    try {
      ConvergenceRecord r;
      r.method = parse_method_tag(fields[0]);
      r.n = std::stoi(fields[1]);
      r.N = std::stoi(fields[2]);
      r.k = std::strtod(fields[3].c_str(), nullptr);
      r.alpha = std::strtod(fields[4].c_str(), nullptr);
      r.d = std::strtod(fields[5].c_str(), nullptr);
      r.resolvents = std::stol(fields[6]);
      r.err2 = std::strtod(fields[7].c_str(), nullptr);
      r.wall_ns = std::stoll(fields[8]);
      out.push_back(r);
    } catch (const std::exception& e) {
      throw IoError("CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

namespace {

const char* kPlotScript = R"(import csv
import math
import os
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
csv_path = os.path.join(here, "@CSV@")
out_path = sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "@STEM@.png")

curves = defaultdict(list)
with open(csv_path, newline="") as f:
    for row in csv.DictReader(f):
        method = row["method"]
        if method in ("talbot", "fixed_talbot"):
            label = method
        elif method == "laguerre_I":
            label = "laguerre_I alpha=%.4g" % float(row["alpha"])
        else:
            label = "%s k=%g alpha=%.4g d=%.4g" % (method, float(row["k"]), float(row["alpha"]), float(row["d"]))
        err = float(row["err2"])
        if math.isfinite(err) and err > 0:
            curves[label].append((int(row["resolvents"]), err))

fig, ax = plt.subplots(figsize=(7, 5))
for label, points in sorted(curves.items()):
    points.sort()
    ax.semilogy([p[0] for p in points], [p[1] for p in points], marker="o", markersize=3, label=label)
ax.set_xlabel("number of resolvents")
ax.set_ylabel("2-norm error")
ax.set_title("@STEM@")
ax.grid(True, which="both", alpha=0.3)
ax.legend(fontsize=7)
fig.tight_layout()
fig.savefig(out_path, dpi=150)
)";

void replace_all(std::string& s, const std::string& from, const std::string& to)
{
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

}  // namespace

void emit(const std::vector<ConvergenceRecord>& records, const std::filesystem::path& path)
{
  if (records.empty()) throw ParameterDomainError("emit: no records");
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_csv(out, records);
    if (!out.flush()) throw IoError("write failed for '" + path.string() + "'");
  }
  std::filesystem::path script = path;
  script.replace_filename(path.stem().string() + "_plot.py");
  std::string text = kPlotScript;
  replace_all(text, "@CSV@", path.filename().string());
  replace_all(text, "@STEM@", path.stem().string());
  std::ofstream out(script, std::ios::binary);
  if (!out) throw IoError("cannot open '" + script.string() + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("write failed for '" + script.string() + "'");
}

std::vector<std::filesystem::path> emit_by_matrix(const std::vector<ConvergenceRecord>& records,
                                                  const std::filesystem::path& path)
{
  if (records.empty()) throw ParameterDomainError("emit: no records");
  std::vector<std::string> names;
  for (const auto& r : records)
    if (std::find(names.begin(), names.end(), r.matrix) == names.end()) names.push_back(r.matrix);
  if (names.size() == 1) {
    emit(records, path);
    return {path};
  }
  std::vector<std::filesystem::path> written;
  for (const auto& name : names) {
    std::vector<ConvergenceRecord> subset;
    for (const auto& r : records)
      if (r.matrix == name) subset.push_back(r);
    std::filesystem::path p = path;
    p.replace_filename(path.stem().string() + "_" + name + path.extension().string());
    emit(subset, p);
    written.push_back(p);
  }
  return written;
}

}  // namespace rectexp
