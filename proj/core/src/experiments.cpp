#include "swipt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "swipt/error.hpp"

namespace swipt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

class LineContext {
 public:
  LineContext(std::string_view origin, int line, std::string_view key)
      : origin_(origin), line_(line), key_(key) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << origin_ << ":" << line_ << ": key '" << key_ << "': " << what;
    throw ConfigError(os.str());
  }

  double number(std::string_view text) const {
    text = trim(text);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
      fail("expected a number, got '" + std::string(text) + "'");
    }
    return v;
  }

  int integer(std::string_view text) const {
    const double v = number(text);
    if (v != std::floor(v) || std::abs(v) > 1e9) fail("expected an integer");
    return static_cast<int>(v);
  }

  std::vector<double> numbers(std::string_view text) const {
    std::vector<double> out;
    for (auto part : split(text, ',')) out.push_back(number(part));
    return out;
  }

 private:
  std::string_view origin_;
  int line_;
  std::string_view key_;
};

using Setter = std::function<void(ExperimentConfig&, std::string_view, const LineContext&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto int_key = [&t](const char* name, int SystemConfig::*field) {
      t[name] = [field](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
        c.system.*field = ctx.integer(v);
      };
    };
    auto real_key = [&t](const char* name, double SystemConfig::*field) {
      t[name] = [field](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
        c.system.*field = ctx.number(v);
      };
    };
    int_key("m_b", &SystemConfig::m_b);
    int_key("m_u", &SystemConfig::m_u);
    int_key("k", &SystemConfig::k);
    int_key("n", &SystemConfig::n);
    int_key("n_max", &SystemConfig::n_max);
    int_key("q_max", &SystemConfig::q_max);
    int_key("t_max", &SystemConfig::t_max);
    real_key("p_max", &SystemConfig::p_max);
    real_key("alpha", &SystemConfig::alpha);
    real_key("rician_beta_db", &SystemConfig::rician_beta_db);
    real_key("chi_direct", &SystemConfig::chi_direct);
    real_key("chi_relate", &SystemConfig::chi_relate);
    real_key("c0_db", &SystemConfig::c0_db);
    real_key("d0", &SystemConfig::d0);
    real_key("spacing_over_lambda", &SystemConfig::spacing_over_lambda);
    real_key("eps1", &SystemConfig::eps1);
    real_key("eps2", &SystemConfig::eps2);
    real_key("eps3", &SystemConfig::eps3);
    real_key("rho_floor", &SystemConfig::rho_floor);
    t["eps"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      c.system.eps1 = c.system.eps2 = c.system.eps3 = ctx.number(v);
    };
    t["sigma2_dbm"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      c.system.sigma2 = dbm_to_watts(ctx.number(v));
    };
    t["delta2_dbm"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      c.system.delta2 = dbm_to_watts(ctx.number(v));
    };
    t["e_min_mw"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      c.system.e_min = ctx.numbers(v);
      for (double& e : c.system.e_min) e *= 1e-3;
    };
    t["eta"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      c.system.eta = ctx.numbers(v);
    };
    t["log_base"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      if (v == "2") {
        c.system.log_base = LogBase::kTwo;
      } else if (v == "e") {
        c.system.log_base = LogBase::kE;
      } else {
        ctx.fail("expected 2 or e");
      }
    };
    auto point = [&t](const char* name, Point2 Geometry::*field, double Point2::*coord) {
      t[name] = [field, coord](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
        (c.geometry.*field).*coord = ctx.number(v);
      };
    };
    point("ap_x", &Geometry::ap_position, &Point2::x);
    point("ap_y", &Geometry::ap_position, &Point2::y);
    point("irs_x", &Geometry::irs_position, &Point2::x);
    point("irs_y", &Geometry::irs_position, &Point2::y);
    point("psr_x", &Geometry::psr_center, &Point2::x);
    point("psr_y", &Geometry::psr_center, &Point2::y);
    t["psr_radius"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      c.geometry.psr_scatter_radius = ctx.number(v);
    };
    t["irs_rows"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      c.geometry.irs_rows = ctx.integer(v);
    };
    t["sweep.variable"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      try {
        c.sweep.variable = parse_sweep_variable(v);
      } catch (const ConfigError& e) {
        ctx.fail(e.what());
      }
    };
    t["sweep.values"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      c.sweep.values = ctx.numbers(v);
    };
    t["sweep.schemes"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      c.sweep.schemes.clear();
      for (auto name : split(v, ',')) {
        try {
          c.sweep.schemes.push_back(parse_scheme(name));
        } catch (const ConfigError& e) {
          ctx.fail(e.what());
        }
      }
    };
    t["sweep.seeds"] = [](ExperimentConfig& c, std::string_view v, const LineContext& ctx) {
      try {
        c.sweep.seeds = parse_seeds(v);
      } catch (const ConfigError& e) {
        ctx.fail(e.what());
      }
    };
    return t;
  }();
  return table;
}

// Line of the last assignment to each key.
using KeyLines = std::map<std::string, int, std::less<>>;

void parse_into(ExperimentConfig& cfg, std::string_view text, std::string_view origin,
                bool sweep_only, KeyLines* lines = nullptr) {
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream os;
      os << origin << ":" << line_no << ": expected 'key = value'";
      throw ConfigError(os.str());
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const LineContext ctx(origin, line_no, key);
    const auto it = setters().find(key);
    if (it == setters().end()) ctx.fail("unknown key");
    if (sweep_only && key.substr(0, 6) != "sweep.") ctx.fail("only sweep.* keys are allowed here");
    if (value.empty()) ctx.fail("missing value");
    it->second(cfg, value, ctx);
    if (lines) (*lines)[std::string(key)] = line_no;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> s;
  for (std::uint64_t i = 1; i <= 20; ++i) s.push_back(i);
  return s;
}

}  // namespace

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::kPMax: return "p_max";
    case SweepVariable::kEMin: return "e_min";
    case SweepVariable::kAlpha: return "alpha";
    case SweepVariable::kNElements: return "n_elements";
    case SweepVariable::kIterations: return "iterations";
  }
  return "unknown";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  for (auto v : {SweepVariable::kPMax, SweepVariable::kEMin, SweepVariable::kAlpha,
                 SweepVariable::kNElements, SweepVariable::kIterations}) {
    if (to_string(v) == name) return v;
  }
  throw ConfigError("unknown sweep variable '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep values must not be empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw ConfigError("sweep values must be strictly increasing");
  }
  if (schemes.empty()) throw ConfigError("sweep needs at least one scheme");
  if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) throw ConfigError("sweep seeds must be distinct");
  if (variable == SweepVariable::kNElements || variable == SweepVariable::kIterations) {
    for (double v : values) {
      if (v < 0.0 || v != std::floor(v)) throw ConfigError("sweep values must be whole numbers");
    }
  }
}

// Range checks run after parsing; point them back at the offending line.
// Messages start with the field name, which maps onto a config key.
ConfigError located_range_error(const SolverError& e, std::string_view origin,
                                const KeyLines& lines) {
  static const std::map<std::string, std::vector<std::string>, std::less<>> aliases{
      {"e_min", {"e_min_mw"}},
      {"sigma2", {"sigma2_dbm"}},
      {"delta2", {"delta2_dbm"}},
      {"thresholds", {"eps", "eps1", "eps2", "eps3"}},
      {"iteration", {"n_max", "q_max", "t_max"}},
      {"psr_scatter_radius", {"psr_radius"}},
      {"coordinates", {"ap_x", "ap_y", "irs_x", "irs_y", "psr_x", "psr_y"}}};
  const std::string what = e.what();
  const auto colon = what.find(": ");
  const std::string message = colon == std::string::npos ? what : what.substr(colon + 2);
  const std::string field = message.substr(0, message.find(' '));
  std::vector<std::string> keys{field};
  if (const auto a = aliases.find(field); a != aliases.end()) keys = a->second;
  // Report the latest line among the candidate keys.
  const std::string* best_key = nullptr;
  int best_line = 0;
  for (const auto& k : keys) {
    if (const auto l = lines.find(k); l != lines.end() && l->second > best_line) {
      best_line = l->second;
      best_key = &l->first;
    }
  }
  std::ostringstream os;
  os << origin;
  if (best_key) os << ":" << best_line << ": key '" << *best_key << "'";
  os << ": " << message;
  return ConfigError(os.str());
}

ExperimentConfig parse_config(std::string_view text, std::string_view origin) {
  ExperimentConfig cfg;
  cfg.sweep.seeds = default_seeds();
  KeyLines lines;
  parse_into(cfg, text, origin, false, &lines);
  // Per-PSR defaults follow k when the file leaves them unset.
  const SystemConfig defaults;
  const auto k_count = static_cast<std::size_t>(std::max(cfg.system.k, 0));
  if (!lines.count("e_min_mw")) cfg.system.e_min.assign(k_count, defaults.e_min.front());
  if (!lines.count("eta")) cfg.system.eta.assign(k_count, defaults.eta.front());
  cfg.system.broadcast_per_psr();
  try {
    cfg.system.validate();
    cfg.geometry.validate();
  } catch (const SolverError& e) {
    throw located_range_error(e, origin, lines);
  }
  if (cfg.sweep.values.empty() && cfg.sweep.variable == SweepVariable::kPMax) {
    cfg.sweep.values = {cfg.system.p_max};
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.string());
}

void load_sweep_file(const std::filesystem::path& path, SweepSpec& spec) {
  ExperimentConfig cfg;
  cfg.sweep = spec;
  parse_into(cfg, read_file(path), path.string(), true);
  spec = cfg.sweep;
}

bool is_builtin_sweep(std::string_view name) {
  for (auto n : {"convergence", "p_max", "e_min", "alpha", "n_elements"}) {
    if (name == n) return true;
  }
  return false;
}

SweepSpec builtin_sweep(std::string_view name, const SweepSpec& base) {
  SweepSpec s = base;
  if (name == "convergence") {
    s.variable = SweepVariable::kIterations;
    s.values.clear();
    for (int i = 0; i <= 50; ++i) s.values.push_back(i);
    s.schemes = {Scheme::kJpsapbo};
  } else if (name == "p_max") {
    s.variable = SweepVariable::kPMax;
    s.values = {5, 10, 15, 20};
  } else if (name == "e_min") {
    s.variable = SweepVariable::kEMin;
    s.values = {0.1, 0.5, 1, 2};
  } else if (name == "alpha") {
    s.variable = SweepVariable::kAlpha;
    s.values = {0.2, 0.4, 0.6, 0.8, 1.0};
  } else if (name == "n_elements") {
    s.variable = SweepVariable::kNElements;
    s.values = {10, 20, 30, 40, 50};
  } else {
    throw ConfigError("unknown sweep '" + std::string(name) + "'");
  }
  return s;
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  text = trim(text);
  auto parse_one = [](std::string_view t) {
    t = trim(t);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
      throw ConfigError("bad seed '" + std::string(t) + "'");
    }
    return v;
  };
  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const std::uint64_t a = parse_one(text.substr(0, dots));
    const std::uint64_t b = parse_one(text.substr(dots + 2));
    if (b < a) throw ConfigError("seed range must be ascending");
    if (b - a > 1000000) throw ConfigError("seed range too large");
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
  } else {
    for (auto part : split(text, ',')) seeds.push_back(parse_one(part));
  }
  return seeds;
}

SystemConfig apply_sweep_value(const SystemConfig& config, SweepVariable variable, double value) {
  SystemConfig c = config;
  switch (variable) {
    case SweepVariable::kPMax: c.p_max = value; break;
    case SweepVariable::kEMin: c.e_min.assign(c.k, value * 1e-3); break;
    case SweepVariable::kAlpha: c.alpha = value; break;
    case SweepVariable::kNElements: c.n = static_cast<int>(value); break;
    case SweepVariable::kIterations: break;
  }
  c.validate();
  return c;
}

int default_thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("SWIPT_BENCH_THREADS")) {
    const std::string_view s(env);
    int cap = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && ptr == s.data() + s.size() && cap >= 1) n = std::min(n, cap);
  }
  return n;
}

bool is_infeasibility(std::string_view error_name) {
  return error_name == to_string(ErrorCode::kInfeasibleEHRequirement) ||
         error_name == to_string(ErrorCode::kEHUnreachableByBeamforming) ||
         error_name == to_string(ErrorCode::kEHUnreachableByPhase);
}

std::vector<SweepRecord> run_sweep_records(const SweepSpec& spec, const SystemConfig& config,
                                           const Geometry& geometry, int threads,
                                           const DriverOptions& options) {
  spec.validate();
  const bool per_iteration = spec.variable == SweepVariable::kIterations;
  // One cell per (value, seed); the iteration sweep needs one run per seed.
  const std::size_t n_values = per_iteration ? 1 : spec.values.size();
  const std::size_t n_cells = n_values * spec.seeds.size();
  const std::size_t n_schemes = spec.schemes.size();
  std::vector<std::vector<SweepRecord>> cell_records(n_cells);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t vi = cell / spec.seeds.size();
    const std::uint64_t seed = spec.seeds[cell % spec.seeds.size()];
    const double value = spec.values[vi];
    const SystemConfig cfg = apply_sweep_value(config, spec.variable, per_iteration ? 0.0 : value);
    const ChannelSet channels = generate_channels(cfg, geometry, seed);
    auto& out = cell_records[cell];
    for (std::size_t si = 0; si < n_schemes; ++si) {
      const Scheme scheme = spec.schemes[si];
      RunResult run;
      std::string error;
      try {
        run = run_scheme(scheme, channels, cfg, seed, options);
      } catch (const SolverError& e) {
        error = std::string(to_string(e.code()));
      }
      const bool ok = error.empty() && check_feasibility(run.solution, channels, cfg).feasible(cfg);
      auto emit = [&](double v, double rate) {
        SweepRecord r;
        r.scheme = scheme;
        r.variable = spec.variable;
        r.value = v;
        r.seed = seed;
        r.feasible = ok;
        r.error = error;
        r.rate = error.empty() ? rate : 0.0;
        r.iterations = error.empty() ? run.iterations() : 0;
        out.push_back(r);
      };
      if (per_iteration) {
        for (double v : spec.values) {
          const auto idx = static_cast<std::size_t>(v);
          const double rate =
              run.trace.empty() ? 0.0 : run.trace[std::min(idx, run.trace.size() - 1)].rate;
          emit(v, rate);
        }
      } else {
        emit(value, run.rate());
      }
    }
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n_cells)));
  if (workers == 1) {
    for (std::size_t c = 0; c < n_cells; ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < n_cells; c = next++) run_cell(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<SweepRecord> records;
  for (auto& cell : cell_records) {
    for (auto& r : cell) records.push_back(std::move(r));
  }
  std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    const auto sa = to_string(a.scheme);
    const auto sb = to_string(b.scheme);
    if (sa != sb) return sa < sb;
    if (a.value != b.value) return a.value < b.value;
    return a.seed < b.seed;
  });
  return records;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "scheme,variable,value,seed,rate,iterations,feasible\n";
  for (const auto& r : records) {
    os << to_string(r.scheme) << ',' << to_string(r.variable) << ',' << format_real(r.value) << ','
       << r.seed << ',' << format_real(r.rate) << ',' << r.iterations << ','
       << (r.feasible ? "true" : "false") << '\n';
  }
}

std::size_t run_sweep(const SweepSpec& spec, const SystemConfig& config, const Geometry& geometry,
                      const std::filesystem::path& out, int threads) {
  const auto records = run_sweep_records(spec, config, geometry, threads);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + out.string() + "'");
  write_csv(os, records);
  return records.size();
}

}  // namespace swipt
