// edgecache command line: runs sweeps, validates configs and executes the
// brute-force oracle suites. Talks to the library through the C API only.
//
// exit codes: 0 success, 1 configuration error, 2 runtime error
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "edgecache.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int exit_code_for(ec_status status) {
  switch (status) {
    case EC_OK: return kExitOk;
    case EC_ERR_CONFIG:
    case EC_ERR_ARGUMENT: return kExitConfig;
    default: return kExitRuntime;
  }
}

int complain(ec_status status) {
  std::fprintf(stderr, "edgecache: %s: %s\n", ec_status_str(status), ec_last_error());
  return exit_code_for(status);
}

struct ConfigHandle {
  ec_config* ptr = nullptr;
  ~ConfigHandle() { ec_config_free(ptr); }
};

struct SweepHandle {
  ec_sweep* ptr = nullptr;
  ~SweepHandle() { ec_sweep_free(ptr); }
};

void print_progress(uint64_t done, uint64_t total, void*) {
  const uint64_t step = total > 100 ? total / 100 : 1;
  if (done % step != 0 && done != total) return;
  std::fprintf(stderr, "\r%3.0f%% (%" PRIu64 "/%" PRIu64 " realizations)",
               100.0 * static_cast<double>(done) / static_cast<double>(total), done, total);
  if (done == total) std::fprintf(stderr, "\n");
}

int load_or_default(const std::string& config_path, ConfigHandle& cfg) {
  const ec_status status = config_path.empty() ? ec_config_create(&cfg.ptr)
                                               : ec_config_load(config_path.c_str(), &cfg.ptr);
  return status == EC_OK ? kExitOk : complain(status);
}

int run_command(const std::string& config_path, const std::string& axis, const std::string& out_dir,
                int realizations, long long seed, bool quick) {
  ConfigHandle cfg;
  if (int rc = load_or_default(config_path, cfg); rc != kExitOk) return rc;

  if (quick && realizations < 0) realizations = 50;
  if (realizations >= 0) {
    const std::string value = std::to_string(realizations);
    if (ec_status s = ec_config_set(cfg.ptr, "realizations", value.c_str()); s != EC_OK)
      return complain(s);
  }
  if (seed >= 0) {
    const std::string value = std::to_string(seed);
    if (ec_status s = ec_config_set(cfg.ptr, "base_seed", value.c_str()); s != EC_OK)
      return complain(s);
  }
  if (ec_status s = ec_config_validate(cfg.ptr); s != EC_OK) return complain(s);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "edgecache: cannot create output directory %s: %s\n", out_dir.c_str(),
                 ec.message().c_str());
    return kExitRuntime;
  }

  SweepHandle sweep;
  if (ec_status s = ec_sweep_run(cfg.ptr, axis.c_str(), nullptr, 0, print_progress, nullptr, &sweep.ptr);
      s != EC_OK)
    return complain(s);

  const std::string csv_path = (std::filesystem::path(out_dir) / (axis + ".csv")).string();
  const std::string svg_path = (std::filesystem::path(out_dir) / (axis + ".svg")).string();
  if (ec_status s = ec_sweep_write_csv(sweep.ptr, csv_path.c_str()); s != EC_OK) return complain(s);
  if (ec_status s = ec_sweep_write_svg(sweep.ptr, svg_path.c_str()); s != EC_OK) return complain(s);
  std::printf("wrote %s\nwrote %s\n", csv_path.c_str(), svg_path.c_str());
  return kExitOk;
}

int validate_command(const std::string& config_path) {
  ConfigHandle cfg;
  if (int rc = load_or_default(config_path, cfg); rc != kExitOk) return rc;
  if (ec_status s = ec_config_validate(cfg.ptr); s != EC_OK) return complain(s);
  std::printf("config ok\n");
  return kExitOk;
}

int oracle_command(const std::string& suite) {
  int checks = 0, failures = 0;
  if (ec_status s = ec_oracle_run(suite.c_str(), &checks, &failures); s != EC_OK) return complain(s);
  std::printf("%s oracle: %d checks, %d failures\n", suite.c_str(), checks, failures);
  return failures == 0 ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for proactive caching at small-cell base stations"};
  app.require_subcommand(1);

  std::string config_path, axis, out_dir, suite;
  int realizations = -1;
  long long seed = -1;
  bool quick = false;

  CLI::App* run = app.add_subcommand("run", "run a parameter sweep and write CSV + SVG");
  run->add_option("--config", config_path, "config file (flat key = value)");
  run->add_option("--sweep", axis, "sweep axis: storage, beta, lambda, backhaul, correspondence")
      ->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--realizations", realizations, "Monte Carlo realizations per grid point");
  run->add_option("--seed", seed, "base seed");
  run->add_flag("--quick", quick, "quick mode: 50 realizations");

  CLI::App* validate = app.add_subcommand("validate", "check a config file");
  validate->add_option("--config", config_path, "config file")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "run a brute-force verification suite");
  oracle->add_option("suite", suite, "crp, gradient or placement")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (run->parsed()) return run_command(config_path, axis, out_dir, realizations, seed, quick);
  if (validate->parsed()) return validate_command(config_path);
  if (oracle->parsed()) return oracle_command(suite);
  return kExitConfig;
}
