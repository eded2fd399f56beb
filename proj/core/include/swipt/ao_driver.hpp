#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/atb_stage.hpp"
#include "swipt/prb_stage.hpp"
#include "swipt/system_model.hpp"

namespace swipt {

enum class Scheme { kJpsapbo, kFixedPs, kRandomPhase, kNoIrs };

std::string_view to_string(Scheme scheme);
// Throws ConfigError for unknown names.
Scheme parse_scheme(std::string_view name);
const std::vector<Scheme>& all_schemes();

struct IterationTrace {
  int iteration = 0;
  double rate = 0.0;
  double power_used = 0.0;
  double min_eh_slack = 0.0;
  std::vector<double> rho;
  int atb_subiters = 0;
  int prb_subiters = 0;
};

struct DriverOptions {
  AtbOptions atb;
  PrbOptions prb;
  // Record f3 after every stage (costly; used by tests).
  bool record_stage_objectives = false;
};

struct RunResult {
  Solution solution;
  AuxiliaryState aux;
  std::vector<IterationTrace> trace;  // entry 0 is the initial point
  bool converged = false;
  // Per outer iteration: f3 after the U, rho, L, W and theta updates.
  std::vector<std::vector<double>> stage_objectives;
  // KKT residuals of every ATB call that reported convergence.
  std::vector<AtbKkt> atb_kkt;

  double rate() const { return trace.empty() ? 0.0 : trace.back().rate; }
  int iterations() const { return trace.empty() ? 0 : trace.back().iteration; }
};

struct Initialization {
  Solution solution;
  AuxiliaryState aux;
};

// Random IRS phases from the seed, equal-power matched-filter beams scaled to
// p_max, rho from the harvesting floors (or pinned when fixed_rho > 0).
Initialization initialize(const ChannelSet& channels, const SystemConfig& config,
                          std::uint64_t seed, double fixed_rho = 0.0);

RunResult run_jpsapbo(const ChannelSet& channels, const SystemConfig& config, std::uint64_t seed,
                      const DriverOptions& options = {});

RunResult run_scheme(Scheme scheme, const ChannelSet& channels, const SystemConfig& config,
                     std::uint64_t seed, const DriverOptions& options = {});

}  // namespace swipt
