// Experiment configuration: defaults, a flat key = value file format, and
// validation. Unknown keys are rejected.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgecache {

enum class Policy { kGroundTruth = 0, kRandom = 1, kCf = 2, kTl = 3 };
constexpr int kPolicyCount = 4;

const char* policy_name(Policy p);

// Raised for malformed files, unknown keys, bad values and failed validation;
// the CLI maps it to its config-error exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  // network scale
  int n_stations = 4;                 // M_tar
  int n_users = 32;                   // N_tar
  int n_contents = 32;                // F_tar
  double content_size_mbit = 1.0;     // L
  double content_bitrate_mbps = 1.0;  // B
  double total_wireless_mbps = 32.0;  // sum_C_wireless
  int horizon = 128;                  // T, slots
  double zipf_exponent = 2.0;         // alpha
  double crp_concentration = 2.0;     // beta
  double total_storage_mbit = 6.0;    // sum_S
  double total_backhaul_mbps = 1.0;   // sum_C
  double arrival_rate = 1.0;          // lambda, demands/s

  // demand / source-domain generation
  double coherence = 0.9;
  double cf_density = 0.04;
  double tl_density = 0.12;
  double correspondence_ratio = 1.0;
  int crp_rounds = 8;
  int crp_padding = 0;  // F_0, contents without history

  // factorization
  int rank = 8;                // k
  double regularization = 0.1;  // mu
  double source_weight = 1.0;   // alpha_source
  double target_weight = 1.0;   // alpha_target
  double learning_rate = 0.02;
  int epochs = 500;
  double init_scale = 0.05;

  // orchestration
  int realizations = 1000;
  uint64_t base_seed = 1;
  std::vector<Policy> policies = {Policy::kGroundTruth, Policy::kRandom, Policy::kCf, Policy::kTl};
  std::string sweep_axis = "storage";
  std::vector<double> sweep_grid;  // empty selects the axis default
  bool global_scores = false;      // rank contents globally instead of per station

  // derived helpers (totals divide equally across stations)
  double storage_per_station() const { return total_storage_mbit / n_stations; }
  double backhaul_per_station() const { return total_backhaul_mbps / n_stations; }
  double wireless_per_station() const { return total_wireless_mbps / n_stations; }
};

ExperimentConfig load_config(const std::string& path);

// Applies one key = value assignment; throws ConfigError on unknown keys or
// unparseable values.
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

void validate_config(const ExperimentConfig& cfg);

bool is_sweep_axis(const std::string& axis);

// 13-point default grid per axis, in raw parameter units.
std::vector<double> default_grid(const std::string& axis, const ExperimentConfig& cfg);

}  // namespace edgecache
