#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace edgecache {

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::kGroundTruth: return "ground_truth";
    case Policy::kRandom: return "random";
    case Policy::kCf: return "cf";
    case Policy::kTl: return "tl";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
  if (used != value.size()) throw ConfigError("config: trailing junk in value for '" + key + "': " + value);
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + value);
  }
  if (used != value.size()) throw ConfigError("config: trailing junk in value for '" + key + "': " + value);
  return v;
}

Policy parse_policy(const std::string& name) {
  for (int i = 0; i < kPolicyCount; ++i)
    if (name == policy_name(static_cast<Policy>(i))) return static_cast<Policy>(i);
  throw ConfigError("config: unknown policy '" + name + "'");
}

std::vector<std::string> split_commas(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

}  // namespace

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "M_tar") cfg.n_stations = static_cast<int>(parse_int(key, value));
  else if (key == "N_tar") cfg.n_users = static_cast<int>(parse_int(key, value));
  else if (key == "F_tar") cfg.n_contents = static_cast<int>(parse_int(key, value));
  else if (key == "L") cfg.content_size_mbit = parse_double(key, value);
  else if (key == "B") cfg.content_bitrate_mbps = parse_double(key, value);
  else if (key == "sum_C_wireless") cfg.total_wireless_mbps = parse_double(key, value);
  else if (key == "T") cfg.horizon = static_cast<int>(parse_int(key, value));
  else if (key == "alpha") cfg.zipf_exponent = parse_double(key, value);
  else if (key == "beta") cfg.crp_concentration = parse_double(key, value);
  else if (key == "sum_S") cfg.total_storage_mbit = parse_double(key, value);
  else if (key == "sum_C") cfg.total_backhaul_mbps = parse_double(key, value);
  else if (key == "lambda") cfg.arrival_rate = parse_double(key, value);
  else if (key == "coherence") cfg.coherence = parse_double(key, value);
  else if (key == "cf_density") cfg.cf_density = parse_double(key, value);
  else if (key == "tl_density") cfg.tl_density = parse_double(key, value);
  else if (key == "correspondence_ratio") cfg.correspondence_ratio = parse_double(key, value);
  else if (key == "crp_rounds") cfg.crp_rounds = static_cast<int>(parse_int(key, value));
  else if (key == "F_0") cfg.crp_padding = static_cast<int>(parse_int(key, value));
  else if (key == "k") cfg.rank = static_cast<int>(parse_int(key, value));
  else if (key == "mu") cfg.regularization = parse_double(key, value);
  else if (key == "alpha_source") cfg.source_weight = parse_double(key, value);
  else if (key == "alpha_target") cfg.target_weight = parse_double(key, value);
  else if (key == "learning_rate") cfg.learning_rate = parse_double(key, value);
  else if (key == "epochs") cfg.epochs = static_cast<int>(parse_int(key, value));
  else if (key == "init_scale") cfg.init_scale = parse_double(key, value);
  else if (key == "realizations") cfg.realizations = static_cast<int>(parse_int(key, value));
  else if (key == "base_seed") {
    const long long v = parse_int(key, value);
    if (v < 0) throw ConfigError("config: base_seed must be >= 0");
    cfg.base_seed = static_cast<uint64_t>(v);
  } else if (key == "policies") {
    cfg.policies.clear();
    for (const std::string& name : split_commas(value)) cfg.policies.push_back(parse_policy(name));
  } else if (key == "sweep_axis") {
    cfg.sweep_axis = value;
  } else if (key == "sweep_grid") {
    cfg.sweep_grid.clear();
    for (const std::string& item : split_commas(value)) cfg.sweep_grid.push_back(parse_double(key, item));
  } else if (key == "score_scope") {
    if (value == "station") cfg.global_scores = false;
    else if (value == "global") cfg.global_scores = true;
    else throw ConfigError("config: score_scope must be 'station' or 'global'");
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: empty key or value at line " + std::to_string(line_no));
    apply_key(cfg, key, value);
  }
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("config: ") + what);
  };
  require(cfg.n_stations >= 1, "M_tar must be >= 1");
  require(cfg.n_users >= 1, "N_tar must be >= 1");
  require(cfg.n_contents >= 1, "F_tar must be >= 1");
  require(cfg.content_size_mbit > 0.0, "L must be > 0");
  require(cfg.content_bitrate_mbps > 0.0, "B must be > 0");
  require(cfg.total_wireless_mbps > 0.0, "sum_C_wireless must be > 0");
  require(cfg.total_backhaul_mbps > 0.0, "sum_C must be > 0");
  require(cfg.total_backhaul_mbps < cfg.total_wireless_mbps, "sum_C must be < sum_C_wireless");
  require(cfg.total_storage_mbit >= 0.0, "sum_S must be >= 0");
  require(cfg.horizon >= 1, "T must be >= 1");
  require(cfg.zipf_exponent >= 0.0, "alpha must be >= 0");
  require(cfg.crp_concentration > 0.0, "beta must be > 0");
  require(cfg.arrival_rate > 0.0, "lambda must be > 0");
  require(cfg.coherence >= 0.0 && cfg.coherence <= 1.0, "coherence must be in [0, 1]");
  require(cfg.cf_density > 0.0 && cfg.cf_density <= 1.0, "cf_density must be in (0, 1]");
  require(cfg.tl_density > 0.0 && cfg.tl_density <= 1.0, "tl_density must be in (0, 1]");
  require(cfg.correspondence_ratio >= 0.0 && cfg.correspondence_ratio <= 1.0,
          "correspondence_ratio must be in [0, 1]");
  require(cfg.crp_rounds >= 1, "crp_rounds must be >= 1");
  require(cfg.crp_padding >= 0, "F_0 must be >= 0");
  require(cfg.rank >= 1, "k must be >= 1");
  require(cfg.rank <= std::min(cfg.n_users, cfg.n_contents), "k must be <= min(N_tar, F_tar)");
  require(cfg.regularization >= 0.0, "mu must be >= 0");
  require(cfg.source_weight >= 0.0, "alpha_source must be >= 0");
  require(cfg.target_weight >= 0.0, "alpha_target must be >= 0");
  require(cfg.source_weight > 0.0 || cfg.target_weight > 0.0, "some system weight must be > 0");
  require(cfg.learning_rate > 0.0, "learning_rate must be > 0");
  require(cfg.epochs >= 0, "epochs must be >= 0");
  require(cfg.init_scale > 0.0, "init_scale must be > 0");
  require(cfg.realizations >= 1, "realizations must be >= 1");
  require(!cfg.policies.empty(), "policies must not be empty");
  require(is_sweep_axis(cfg.sweep_axis), "unknown sweep_axis");
  require(std::is_sorted(cfg.sweep_grid.begin(), cfg.sweep_grid.end()), "sweep_grid must be sorted");
}

bool is_sweep_axis(const std::string& axis) {
  return axis == "storage" || axis == "beta" || axis == "lambda" || axis == "backhaul" ||
         axis == "correspondence";
}

std::vector<double> default_grid(const std::string& axis, const ExperimentConfig& cfg) {
  auto linspace = [](double lo, double hi, int n) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
    return grid;
  };
  constexpr int kPoints = 13;
  if (axis == "storage") return linspace(0.0, cfg.n_contents * cfg.content_size_mbit, kPoints);
  if (axis == "beta") return linspace(2.0, 100.0, kPoints);
  if (axis == "lambda") return linspace(1.0, 3.0, kPoints);
  if (axis == "backhaul") return linspace(1.0, 8.0, kPoints);
  if (axis == "correspondence") return linspace(0.0, 1.0, kPoints);
  throw ConfigError("config: unknown sweep axis '" + axis + "'");
}

}  // namespace edgecache
