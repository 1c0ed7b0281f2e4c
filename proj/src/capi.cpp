// extern "C" surface over the C++ core. Exceptions stop here and become
// status codes plus a thread-local message.
#include "edgecache.h"

#include <cstring>
#include <exception>
#include <string>

#include "config.hpp"
#include "harness.hpp"
#include "oracles.hpp"
#include "report.hpp"

struct ec_config {
  edgecache::ExperimentConfig cfg;
};

struct ec_sweep {
  edgecache::SweepResult result;
};

namespace {

thread_local std::string g_last_error = "no error";

ec_status fail(ec_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
ec_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const edgecache::ConfigError& e) {
    return fail(EC_ERR_CONFIG, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(EC_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(EC_ERR_RUNTIME, e.what());
  }
}

}  // namespace

extern "C" {

const char* ec_status_str(ec_status status) {
  switch (status) {
    case EC_OK: return "ok";
    case EC_ERR_CONFIG: return "configuration error";
    case EC_ERR_ARGUMENT: return "invalid argument";
    case EC_ERR_IO: return "i/o error";
    case EC_ERR_RUNTIME: return "runtime error";
  }
  return "unknown status";
}

const char* ec_last_error(void) { return g_last_error.c_str(); }

ec_status ec_config_create(ec_config** out) {
  if (out == nullptr) return fail(EC_ERR_ARGUMENT, "ec_config_create: out is NULL");
  return guarded([&] {
    *out = new ec_config{};
    return EC_OK;
  });
}

ec_status ec_config_load(const char* path, ec_config** out) {
  if (path == nullptr || out == nullptr) return fail(EC_ERR_ARGUMENT, "ec_config_load: NULL argument");
  return guarded([&] {
    auto cfg = edgecache::load_config(path);
    *out = new ec_config{std::move(cfg)};
    return EC_OK;
  });
}

ec_status ec_config_set(ec_config* cfg, const char* key, const char* value) {
  if (cfg == nullptr || key == nullptr || value == nullptr)
    return fail(EC_ERR_ARGUMENT, "ec_config_set: NULL argument");
  return guarded([&] {
    edgecache::apply_key(cfg->cfg, key, value);
    return EC_OK;
  });
}

ec_status ec_config_validate(const ec_config* cfg) {
  if (cfg == nullptr) return fail(EC_ERR_ARGUMENT, "ec_config_validate: NULL config");
  return guarded([&] {
    edgecache::validate_config(cfg->cfg);
    return EC_OK;
  });
}

void ec_config_free(ec_config* cfg) { delete cfg; }

ec_status ec_realization_run(const ec_config* cfg, uint64_t seed, double eta[4], double rho[4]) {
  if (cfg == nullptr || eta == nullptr || rho == nullptr)
    return fail(EC_ERR_ARGUMENT, "ec_realization_run: NULL argument");
  return guarded([&] {
    const edgecache::RealizationResult rr = edgecache::run_realization(cfg->cfg, seed);
    for (int p = 0; p < edgecache::kPolicyCount; ++p) {
      if (rr.metrics[p].has_value()) {
        eta[p] = rr.metrics[p]->satisfaction_ratio;
        rho[p] = rr.metrics[p]->backhaul_load;
      } else {
        eta[p] = -1.0;
        rho[p] = -1.0;
      }
    }
    return EC_OK;
  });
}

ec_status ec_sweep_run(const ec_config* cfg, const char* axis, const double* grid,
                       size_t grid_len, ec_progress_fn progress, void* user, ec_sweep** out) {
  if (cfg == nullptr || axis == nullptr || out == nullptr)
    return fail(EC_ERR_ARGUMENT, "ec_sweep_run: NULL argument");
  if (grid == nullptr && grid_len != 0)
    return fail(EC_ERR_ARGUMENT, "ec_sweep_run: grid is NULL but grid_len > 0");
  if (!edgecache::is_sweep_axis(axis))
    return fail(EC_ERR_ARGUMENT, std::string("ec_sweep_run: unknown axis '") + axis + "'");
  return guarded([&] {
    std::vector<double> grid_values;
    if (grid_len > 0) grid_values.assign(grid, grid + grid_len);
    else if (!cfg->cfg.sweep_grid.empty()) grid_values = cfg->cfg.sweep_grid;
    else grid_values = edgecache::default_grid(axis, cfg->cfg);

    edgecache::ProgressFn fn;
    if (progress != nullptr)
      fn = [progress, user](uint64_t done, uint64_t total) { progress(done, total, user); };
    auto result = edgecache::run_sweep(cfg->cfg, axis, grid_values, fn);
    *out = new ec_sweep{std::move(result)};
    return EC_OK;
  });
}

ec_status ec_sweep_write_csv(const ec_sweep* sweep, const char* path) {
  if (sweep == nullptr || path == nullptr) return fail(EC_ERR_ARGUMENT, "ec_sweep_write_csv: NULL argument");
  try {
    edgecache::emit_csv(sweep->result, path);
    return EC_OK;
  } catch (const std::exception& e) {
    return fail(EC_ERR_IO, e.what());
  }
}

ec_status ec_sweep_write_svg(const ec_sweep* sweep, const char* path) {
  if (sweep == nullptr || path == nullptr) return fail(EC_ERR_ARGUMENT, "ec_sweep_write_svg: NULL argument");
  try {
    edgecache::emit_plot(sweep->result, path);
    return EC_OK;
  } catch (const std::exception& e) {
    return fail(EC_ERR_IO, e.what());
  }
}

void ec_sweep_free(ec_sweep* sweep) { delete sweep; }

ec_status ec_oracle_run(const char* suite, int* checks, int* failures) {
  if (suite == nullptr || checks == nullptr || failures == nullptr)
    return fail(EC_ERR_ARGUMENT, "ec_oracle_run: NULL argument");
  return guarded([&]() -> ec_status {
    edgecache::OracleReport report;
    if (std::strcmp(suite, "crp") == 0) report = edgecache::crp_partition_oracle();
    else if (std::strcmp(suite, "gradient") == 0) report = edgecache::gradient_oracle(2024, 50);
    else if (std::strcmp(suite, "placement") == 0) report = edgecache::placement_oracle(2024, 100);
    else return fail(EC_ERR_ARGUMENT, std::string("ec_oracle_run: unknown suite '") + suite + "'");
    *checks = report.checks;
    *failures = report.failures;
    return EC_OK;
  });
}

}  // extern "C"
