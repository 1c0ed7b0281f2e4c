// Monte Carlo orchestration: one paired realization across the caching
// policies, and parameter sweeps with common random numbers per realization
// index.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "delivery.hpp"

namespace edgecache {

struct RealizationResult {
  // indexed by Policy; only the configured policies are filled
  std::array<std::optional<Metrics>, kPolicyCount> metrics;
  uint64_t trace_hash = 0;  // identical for every policy of one realization
  size_t n_requests = 0;
};

// One realization under one seed: popularity, association, trace, source
// ratings and fits are drawn from labeled sub-streams of the seed, then every
// configured policy is simulated against the same trace.
RealizationResult run_realization(const ExperimentConfig& cfg, uint64_t seed);

struct SweepCell {
  double eta_mean = 0.0;
  double eta_stderr = 0.0;
  double rho_mean = 0.0;
  double rho_stderr = 0.0;
};

struct SweepResult {
  std::string axis;
  std::vector<double> grid;         // raw parameter values, ascending
  std::vector<double> plot_values;  // grid as plotted (storage normalized by F*L)
  std::string axis_label;
  std::vector<Policy> policies;
  int realizations = 0;
  std::vector<SweepCell> cells;  // grid-major, then policy order

  const SweepCell& cell(size_t grid_index, size_t policy_index) const {
    return cells[grid_index * policies.size() + policy_index];
  }
};

using ProgressFn = std::function<void(uint64_t done, uint64_t total)>;

// Overrides the axis parameter at each grid point and averages
// run_realization over seeds base_seed .. base_seed + R - 1; the same seeds
// are reused at every grid point. Workers split the (point, realization)
// matrix; results are reduced in a fixed order, so output is independent of
// scheduling.
SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& axis,
                      const std::vector<double>& grid, const ProgressFn& progress = {});

}  // namespace edgecache
