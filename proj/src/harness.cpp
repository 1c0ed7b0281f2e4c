#include "harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>

#include "crp.hpp"
#include "factorization.hpp"
#include "rng.hpp"

namespace edgecache {

namespace {

uint64_t hash_trace(const RequestTrace& trace) {
  uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ull;
  };
  feed(static_cast<uint64_t>(trace.horizon));
  for (const Request& r : trace.requests) {
    feed(static_cast<uint64_t>(r.slot));
    feed(static_cast<uint64_t>(r.user));
    feed(static_cast<uint64_t>(r.station));
    feed(static_cast<uint64_t>(r.content));
  }
  return h;
}

bool wants(const ExperimentConfig& cfg, Policy p) {
  for (Policy q : cfg.policies)
    if (q == p) return true;
  return false;
}

unsigned worker_count(size_t n_items) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("EDGECACHE_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  if (n < 1) n = 1;
  return static_cast<unsigned>(std::min<size_t>(n, std::max<size_t>(n_items, 1)));
}

void parallel_for(size_t n_items, const std::function<void(size_t)>& body,
                  const ProgressFn& progress) {
  const unsigned n_workers = worker_count(n_items);
  if (n_workers <= 1) {
    for (size_t i = 0; i < n_items; ++i) {
      body(i);
      if (progress) progress(i + 1, n_items);
    }
    return;
  }
  std::atomic<size_t> next{0};
  std::atomic<size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= n_items) return;
      body(i);
      const size_t d = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(d, n_items);
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
}

// pairwise (cascade) summation keeps the reduction independent of length
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

SweepCell summarize(std::span<const double> eta, std::span<const double> rho) {
  SweepCell cell;
  const double n = static_cast<double>(eta.size());
  cell.eta_mean = pairwise_sum(eta) / n;
  cell.rho_mean = pairwise_sum(rho) / n;
  if (eta.size() > 1) {
    std::vector<double> dev(eta.size());
    for (size_t i = 0; i < eta.size(); ++i) dev[i] = (eta[i] - cell.eta_mean) * (eta[i] - cell.eta_mean);
    cell.eta_stderr = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
    for (size_t i = 0; i < rho.size(); ++i) dev[i] = (rho[i] - cell.rho_mean) * (rho[i] - cell.rho_mean);
    cell.rho_stderr = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
  }
  return cell;
}

}  // namespace

RealizationResult run_realization(const ExperimentConfig& cfg, uint64_t seed) {
  validate_config(cfg);
  const int M = cfg.n_stations;
  const int N = cfg.n_users;
  const int F = cfg.n_contents;

  const ZipfLaw zipf{cfg.zipf_exponent, F};
  const PopularityMatrix pop = make_popularity(zipf, N, cfg.coherence, subseed(seed, "popularity"));

  Rng assoc_rng(subseed(seed, "assoc"));
  std::vector<int> assoc(N);
  for (int n = 0; n < N; ++n) assoc[n] = static_cast<int>(assoc_rng.below(static_cast<uint64_t>(M)));

  // one popularity matrix shared by all stations; the per-station view only
  // differs in which users request there
  std::vector<PopularityMatrix> station_pops(M, pop);
  for (int m = 0; m < M; ++m) station_pops[m].station_id = m;
  const RequestTrace trace =
      sample_trace(station_pops, assoc, cfg.arrival_rate, cfg.horizon, subseed(seed, "trace"));

  const Catalog catalog = Catalog::uniform(F, cfg.content_size_mbit, cfg.content_bitrate_mbps);
  const std::vector<double> budgets(M, cfg.storage_per_station());
  LinkBudget links;
  links.backhaul_mbps.assign(M, cfg.backhaul_per_station());
  links.wireless_mbps.assign(M, cfg.wireless_per_station());

  const std::vector<int> global_assoc(N, 0);  // collapses scoring to column means
  auto scores_for = [&](const std::vector<double>& pred) {
    if (cfg.global_scores) {
      auto global = station_scores(pred, N, F, global_assoc, 1);
      return std::vector<std::vector<double>>(M, global[0]);
    }
    return station_scores(pred, N, F, assoc, M);
  };

  const SgdOptions opt{cfg.learning_rate, cfg.epochs, cfg.init_scale};

  RealizationResult result;
  result.trace_hash = hash_trace(trace);
  result.n_requests = trace.requests.size();

  auto run_policy = [&](Policy p, const CachePlan& plan) {
    result.metrics[static_cast<int>(p)] = simulate(trace, plan, links, catalog, cfg.horizon).metrics;
  };

  if (wants(cfg, Policy::kGroundTruth))
    run_policy(Policy::kGroundTruth, place_greedy(scores_for(pop.p), catalog, budgets));
  if (wants(cfg, Policy::kRandom))
    run_policy(Policy::kRandom, place_random(catalog, budgets, subseed(seed, "random_placement")));
  if (wants(cfg, Policy::kCf)) {
    const RatingsMatrix training = sparsify(pop, cfg.cf_density, subseed(seed, "ratings"));
    const FactorModel model =
        cf_fit(training, cfg.rank, cfg.regularization, opt, subseed(seed, "cf_init"));
    run_policy(Policy::kCf, place_greedy(scores_for(predict_matrix(model, N, F)), catalog, budgets));
  }
  if (wants(cfg, Policy::kTl)) {
    const RatingsMatrix training = sparsify(pop, cfg.tl_density, subseed(seed, "ratings"));
    const CrpConfig crp{cfg.crp_concentration, N, cfg.crp_rounds};
    const RatingsMatrix source = crp_to_ratings(crp, subseed(seed, "crp"), cfg.crp_padding);
    const CorrespondenceMap corr =
        make_correspondence(cfg.correspondence_ratio, F, N, subseed(seed, "correspondence"));
    const TlWeights weights{cfg.source_weight, cfg.target_weight, cfg.regularization};
    const FactorModel model =
        tl_fit(training, source, corr, weights, cfg.rank, opt, subseed(seed, "tl_init"));
    run_policy(Policy::kTl, place_greedy(scores_for(predict_matrix(model, N, F)), catalog, budgets));
  }
  return result;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& axis,
                      const std::vector<double>& grid, const ProgressFn& progress) {
  validate_config(cfg);
  if (!is_sweep_axis(axis)) throw std::invalid_argument("run_sweep: unknown axis '" + axis + "'");
  if (grid.empty()) throw std::invalid_argument("run_sweep: grid must not be empty");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("run_sweep: grid must be sorted ascending");

  auto configure = [&axis](ExperimentConfig c, double value) {
    if (axis == "storage") c.total_storage_mbit = value;
    else if (axis == "beta") c.crp_concentration = value;
    else if (axis == "lambda") c.arrival_rate = value;
    else if (axis == "backhaul") c.total_backhaul_mbps = value;
    else c.correspondence_ratio = value;
    validate_config(c);  // grid values must keep the config legal
    return c;
  };
  std::vector<ExperimentConfig> point_cfgs;
  point_cfgs.reserve(grid.size());
  for (double value : grid) point_cfgs.push_back(configure(cfg, value));

  SweepResult result;
  result.axis = axis;
  result.grid = grid;
  result.policies = cfg.policies;
  result.realizations = cfg.realizations;
  if (axis == "storage") {
    result.axis_label = "storage ratio";
    const double full = cfg.n_contents * cfg.content_size_mbit;
    for (double v : grid) result.plot_values.push_back(v / full);
  } else {
    result.axis_label = axis == "beta"       ? "crp concentration"
                        : axis == "lambda"   ? "traffic intensity (demands/s)"
                        : axis == "backhaul" ? "total backhaul capacity (Mbit/s)"
                                             : "perfect correspondence ratio";
    result.plot_values = grid;
  }

  const size_t n_points = grid.size();
  const size_t n_real = static_cast<size_t>(cfg.realizations);
  const size_t n_policies = cfg.policies.size();
  // (point, realization, policy) value matrix, filled by disjoint writes
  std::vector<double> eta(n_points * n_real * n_policies);
  std::vector<double> rho(n_points * n_real * n_policies);

  parallel_for(n_points * n_real, [&](size_t item) {
    const size_t point = item / n_real;
    const size_t r = item % n_real;
    const RealizationResult rr = run_realization(point_cfgs[point], cfg.base_seed + r);
    for (size_t pi = 0; pi < n_policies; ++pi) {
      const Metrics& m = rr.metrics[static_cast<int>(cfg.policies[pi])].value();
      const size_t at = (point * n_real + r) * n_policies + pi;
      eta[at] = m.satisfaction_ratio;
      rho[at] = m.backhaul_load;
    }
  }, progress);

  // reduce in fixed (point, policy) order
  std::vector<double> eta_col(n_real), rho_col(n_real);
  for (size_t point = 0; point < n_points; ++point) {
    for (size_t pi = 0; pi < n_policies; ++pi) {
      for (size_t r = 0; r < n_real; ++r) {
        const size_t at = (point * n_real + r) * n_policies + pi;
        eta_col[r] = eta[at];
        rho_col[r] = rho[at];
      }
      result.cells.push_back(summarize(eta_col, rho_col));
    }
  }
  return result;
}

}  // namespace edgecache
