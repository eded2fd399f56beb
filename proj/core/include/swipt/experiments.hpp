#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/ao_driver.hpp"
#include "swipt/channel.hpp"
#include "swipt/config.hpp"

namespace swipt {

enum class SweepVariable { kPMax, kEMin, kAlpha, kNElements, kIterations };

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kPMax;
  // p_max in W, e_min in mW, alpha, N, or iteration indices.
  std::vector<double> values;  // empty: the configured p_max
  std::vector<Scheme> schemes = all_schemes();
  std::vector<std::uint64_t> seeds;

  // Throws ConfigError when values are empty or not strictly monotone, or
  // seeds repeat.
  void validate() const;
};

struct SweepRecord {
  Scheme scheme = Scheme::kJpsapbo;
  SweepVariable variable = SweepVariable::kPMax;
  double value = 0.0;
  std::uint64_t seed = 0;
  double rate = 0.0;
  int iterations = 0;
  bool feasible = false;
  // Empty on success; error name otherwise.
  std::string error;
};

struct ExperimentConfig {
  SystemConfig system;
  Geometry geometry;
  SweepSpec sweep;
};

// Flat "key = value" text with '#' comments. Missing keys keep their defaults.
ExperimentConfig parse_config(std::string_view text, std::string_view origin = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Reads only sweep.* keys from a file into `spec`.
void load_sweep_file(const std::filesystem::path& path, SweepSpec& spec);

// Named sweeps: convergence, p_max, e_min, alpha, n_elements.
bool is_builtin_sweep(std::string_view name);
SweepSpec builtin_sweep(std::string_view name, const SweepSpec& base);

// "a..b" inclusive range or a comma separated list.
std::vector<std::uint64_t> parse_seeds(std::string_view text);

// Applies one sweep value to a copy of the configuration.
SystemConfig apply_sweep_value(const SystemConfig& config, SweepVariable variable, double value);

// Worker count from SWIPT_BENCH_THREADS (default: hardware concurrency).
int default_thread_count();

// Records in (scheme, value, seed) order.
std::vector<SweepRecord> run_sweep_records(const SweepSpec& spec, const SystemConfig& config,
                                           const Geometry& geometry, int threads,
                                           const DriverOptions& options = {});

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);

// Returns the number of records written.
std::size_t run_sweep(const SweepSpec& spec, const SystemConfig& config, const Geometry& geometry,
                      const std::filesystem::path& out, int threads = default_thread_count());

// Errors that count as an infeasible scenario rather than a failure.
bool is_infeasibility(std::string_view error_name);

}  // namespace swipt
