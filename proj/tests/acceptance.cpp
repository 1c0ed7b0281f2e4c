// Acceptance suite. Runs the eight release criteria at full scale (1000
// Monte Carlo realizations where applicable) and prints one PASS/FAIL line
// per criterion. Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "crp.hpp"
#include "factorization.hpp"
#include "harness.hpp"
#include "oracles.hpp"
#include "report.hpp"
#include "rng.hpp"

using namespace edgecache;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int id, const char* label) : id_(id), label_(label), start_(clock_t::now()) {}

  void check(bool ok, const std::string& what) {
    if (!ok) problems_.push_back(what);
    notes_.push_back((ok ? "" : "FAILED: ") + what);
  }

  void finish(double budget_seconds = 0.0) {
    const double elapsed =
        std::chrono::duration<double>(clock_t::now() - start_).count();
    if (budget_seconds > 0.0 && elapsed >= budget_seconds) {
      problems_.push_back("runtime " + format(elapsed) + " s exceeded " + format(budget_seconds) +
                          " s budget");
    }
    const bool pass = problems_.empty();
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id_, label_, elapsed);
    for (const std::string& note : notes_) std::printf("         - %s\n", note.c_str());
    for (const std::string& problem : problems_) std::printf("         ! %s\n", problem.c_str());
    std::fflush(stdout);
  }

  static std::string format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
  }

 private:
  using clock_t = std::chrono::steady_clock;
  int id_;
  const char* label_;
  clock_t::time_point start_;
  std::vector<std::string> notes_;
  std::vector<std::string> problems_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- criterion 1: analytic suite -----------------------------------------

void criterion_1() {
  Criterion c(1, "analytic suite: zipf normalization, seating partition oracle, gradient check");

  double worst_norm = 0.0;
  for (double exponent : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    for (int n : {1, 2, 32, 1000}) {
      const auto pmf = zipf_pmf(exponent, n);
      double sum = 0.0;
      for (double p : pmf) sum += p;
      worst_norm = std::max(worst_norm, std::abs(sum - 1.0));
    }
  }
  c.check(worst_norm < 1e-12, "zipf pmf normalization error " + Criterion::format(worst_norm) +
                                  " < 1e-12 over the steepness/catalog grid");

  const OracleReport crp = crp_partition_oracle();
  c.check(crp.failures == 0 && crp.worst_error < 1e-9,
          "partition totals equal 1 within 1e-9 for N <= 6 (worst " +
              Criterion::format(crp.worst_error) + " over " + std::to_string(crp.checks) +
              " checks)");

  const OracleReport grad = gradient_oracle(2024, 50);
  c.check(grad.failures == 0 && grad.worst_error < 1e-5,
          "gradient vs central differences, 50 instances, worst relative error " +
              Criterion::format(grad.worst_error) + " < 1e-5");

  c.finish(30.0);
}

// --- criterion 2: joint fit degenerates to the single-domain fit ----------

void criterion_2() {
  Criterion c(2, "zero source weight reproduces the single-domain fit bit for bit");
  bool all_equal = true;
  for (uint64_t seed : {3ull, 17ull, 90210ull}) {
    const PopularityMatrix pop = make_popularity({2.0, 32}, 32, 0.9, subseed(seed, "popularity"));
    const RatingsMatrix target = sparsify(pop, 0.12, subseed(seed, "ratings"));
    const RatingsMatrix source = crp_to_ratings({2.0, 32, 8}, subseed(seed, "crp"));
    const CorrespondenceMap corr = make_correspondence(1.0, 32, 32, subseed(seed, "corr"));

    const SgdOptions opt;
    const auto cf_pred = predict_matrix(cf_fit(target, 8, 0.1, opt, seed), 32, 32);
    const auto tl_pred =
        predict_matrix(tl_fit(target, source, corr, {0.0, 1.0, 0.1}, 8, opt, seed), 32, 32);
    all_equal = all_equal &&
                std::memcmp(cf_pred.data(), tl_pred.data(), cf_pred.size() * sizeof(double)) == 0;
  }
  c.check(all_equal, "predictions identical under shared seed and schedule (3 seeds, full matrix)");
  c.finish();
}

// --- criterion 3: delivery invariants on random fixtures ------------------

struct Fixture {
  RequestTrace trace;
  CachePlan plan;
  CachePlan superset;
  LinkBudget links;
  Catalog catalog;
  int horizon = 0;
};

Fixture random_fixture(uint64_t seed) {
  Rng rng(seed);
  Fixture fx;
  const int n_stations = 1 + static_cast<int>(rng.below(3));
  const int n_contents = 2 + static_cast<int>(rng.below(9));
  const int n_users = 2 + static_cast<int>(rng.below(11));
  fx.horizon = 4 + static_cast<int>(rng.below(37));
  for (int f = 0; f < n_contents; ++f) {
    const double sizes[] = {0.5, 1.0, 1.5, 2.0};
    const double rates[] = {0.5, 1.0};
    fx.catalog.size_mbit.push_back(sizes[rng.below(4)]);
    fx.catalog.bitrate_mbps.push_back(rates[rng.below(2)]);
  }
  for (int m = 0; m < n_stations; ++m) {
    fx.links.backhaul_mbps.push_back(0.3 + rng.uniform() * 1.7);
    fx.links.wireless_mbps.push_back(2.0 + rng.uniform() * 4.0);
  }
  fx.plan.n_stations = n_stations;
  fx.plan.n_contents = n_contents;
  fx.plan.storage_budgets.assign(n_stations, 2.0 * n_contents);
  fx.plan.x.assign(static_cast<size_t>(n_stations) * n_contents, 0);
  for (uint8_t& bit : fx.plan.x) bit = rng.below(2) ? 1 : 0;
  fx.superset = fx.plan;
  for (uint8_t& bit : fx.superset.x)
    if (rng.below(3) == 0) bit = 1;
  fx.trace.horizon = fx.horizon;
  const double arrival_rate = 0.5 + rng.uniform() * 3.5;
  for (int slot = 0; slot < fx.horizon; ++slot) {
    const int arrivals = rng.poisson(arrival_rate);
    for (int a = 0; a < arrivals; ++a)
      fx.trace.requests.push_back({slot, static_cast<int>(rng.below(n_users)),
                                   static_cast<int>(rng.below(n_stations)),
                                   static_cast<int>(rng.below(n_contents))});
  }
  return fx;
}

void criterion_3() {
  Criterion c(3, "delivery conservation, capacity and cache-monotonicity invariants");
  int conservation_bad = 0, capacity_bad = 0, range_bad = 0, monotonic_bad = 0, usable = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const Fixture fx = random_fixture(20000 + seed);
    if (fx.trace.requests.empty()) continue;
    ++usable;
    const auto out = simulate(fx.trace, fx.plan, fx.links, fx.catalog, fx.horizon);

    if (out.metrics.backhaul_load < 0.0 || out.metrics.backhaul_load > 1.0 + 1e-12 ||
        out.metrics.satisfaction_ratio < 0.0 || out.metrics.satisfaction_ratio > 1.0)
      ++range_bad;

    for (const DeliveryRecord& rec : out.records) {
      const double size = fx.catalog.size_mbit[rec.content];
      double wireless = 0.0;
      for (double r : rec.wireless_rate) wireless += r;
      const bool cached = fx.plan.cached(rec.station, rec.content);
      if (rec.completion_slot >= 0) {
        if (std::abs(wireless - size) > 1e-9) ++conservation_bad;
        if (cached && rec.backhaul_mbit != 0.0) ++conservation_bad;
        if (!cached && std::abs(rec.backhaul_mbit - size) > 1e-9) ++conservation_bad;
      }
    }
    for (int slot = 0; slot < fx.horizon; ++slot) {
      std::vector<double> wireless_sum(fx.links.wireless_mbps.size(), 0.0);
      std::vector<double> backhaul_sum(fx.links.backhaul_mbps.size(), 0.0);
      for (const DeliveryRecord& rec : out.records) {
        const int offset = slot - rec.arrival_slot;
        if (offset < 0 || offset >= static_cast<int>(rec.wireless_rate.size())) continue;
        wireless_sum[rec.station] += rec.wireless_rate[offset];
        backhaul_sum[rec.station] += rec.backhaul_rate[offset];
      }
      for (size_t m = 0; m < wireless_sum.size(); ++m) {
        if (wireless_sum[m] > fx.links.wireless_mbps[m] + 1e-9) ++capacity_bad;
        if (backhaul_sum[m] > fx.links.backhaul_mbps[m] + 1e-9) ++capacity_bad;
      }
    }

    // monotonicity is checked on fully drained horizons: with truncation the
    // load metric can legitimately move either way as backhaul bytes shift
    // between contents of different sizes
    Fixture drained = fx;
    double total_bits = 0.0;
    for (const Request& r : drained.trace.requests) total_bits += drained.catalog.size_mbit[r.content];
    double min_cap = 1e300;
    for (size_t m = 0; m < drained.links.backhaul_mbps.size(); ++m)
      min_cap = std::min({min_cap, drained.links.backhaul_mbps[m], drained.links.wireless_mbps[m]});
    drained.horizon +=
        static_cast<int>(total_bits / min_cap) + static_cast<int>(drained.trace.requests.size()) + 2;
    drained.trace.horizon = drained.horizon;
    const auto base = simulate(drained.trace, drained.plan, drained.links, drained.catalog, drained.horizon);
    const auto more =
        simulate(drained.trace, drained.superset, drained.links, drained.catalog, drained.horizon);
    bool drained_ok = true;
    for (const DeliveryRecord& rec : base.records) drained_ok = drained_ok && rec.completion_slot >= 0;
    for (const DeliveryRecord& rec : more.records) drained_ok = drained_ok && rec.completion_slot >= 0;
    if (!drained_ok || more.metrics.satisfaction_ratio < base.metrics.satisfaction_ratio ||
        more.metrics.backhaul_load > base.metrics.backhaul_load + 1e-12)
      ++monotonic_bad;
  }
  c.check(usable >= 95, std::to_string(usable) + " non-empty fixtures of 100");
  c.check(conservation_bad == 0, "byte conservation on every completed request");
  c.check(capacity_bad == 0, "per-slot link capacity respected at every station");
  c.check(range_bad == 0, "metrics stay in [0, 1]");
  c.check(monotonic_bad == 0,
          "superset cache plans never lower satisfaction or raise load (drained horizons)");
  c.finish(60.0);
}

// --- criterion 4: forced storage endpoints --------------------------------

void criterion_4() {
  Criterion c(4, "forced endpoints: full catalog kills backhaul use, zero storage equalizes");

  ExperimentConfig single;
  single.n_stations = 1;
  single.total_storage_mbit = single.n_contents * single.content_size_mbit;
  single.policies = {Policy::kGroundTruth};
  ExperimentConfig wide;
  wide.total_storage_mbit = wide.n_stations * wide.n_contents * wide.content_size_mbit;
  wide.policies = {Policy::kGroundTruth};
  bool zero_load = true;
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    zero_load = zero_load &&
                run_realization(single, seed).metrics[0]->backhaul_load == 0.0 &&
                run_realization(wide, seed).metrics[0]->backhaul_load == 0.0;
  }
  c.check(zero_load,
          "ground truth with the whole catalog cached has exactly zero backhaul load (25 seeds)");

  ExperimentConfig empty;
  empty.total_storage_mbit = 0.0;
  bool identical = true;
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    const RealizationResult rr = run_realization(empty, seed);
    const Metrics& gt = *rr.metrics[0];
    for (int p = 1; p < kPolicyCount; ++p)
      identical = identical && rr.metrics[p]->satisfaction_ratio == gt.satisfaction_ratio &&
                  rr.metrics[p]->backhaul_load == gt.backhaul_load;
  }
  c.check(identical, "zero storage makes all four policies per-seed identical (25 seeds)");
  c.finish();
}

// --- criterion 5: storage sweep reproduction ------------------------------

size_t policy_index(const SweepResult& result, Policy p) {
  for (size_t i = 0; i < result.policies.size(); ++i)
    if (result.policies[i] == p) return i;
  std::fprintf(stderr, "policy missing from sweep\n");
  std::exit(2);
}

void criterion_5() {
  Criterion c(5, "storage sweep at defaults, R = 1000: ordering, transfer gap, terminal point");
  const ExperimentConfig cfg;
  const SweepResult result = run_sweep(cfg, "storage", default_grid("storage", cfg));
  const size_t gt = policy_index(result, Policy::kGroundTruth);
  const size_t cf = policy_index(result, Policy::kCf);
  const size_t tl = policy_index(result, Policy::kTl);

  bool non_decreasing = true;
  for (size_t g = 1; g < result.grid.size(); ++g)
    non_decreasing =
        non_decreasing && result.cell(g, gt).eta_mean >= result.cell(g - 1, gt).eta_mean - 1e-12;
  c.check(non_decreasing, "(a) ground-truth satisfaction is non-decreasing in storage");

  bool ordered = true;
  std::string order_detail;
  for (size_t g = 0; g < result.grid.size(); ++g) {
    const double ratio = result.plot_values[g];
    if (ratio < 0.25 - 1e-9 || ratio > 0.75 + 1e-9) continue;
    const bool here = result.cell(g, gt).eta_mean >= result.cell(g, tl).eta_mean - 1e-12 &&
                      result.cell(g, tl).eta_mean >= result.cell(g, cf).eta_mean - 1e-12;
    if (!here) order_detail += " ratio=" + Criterion::format(ratio);
    ordered = ordered && here;
  }
  c.check(ordered, "(b) mean satisfaction ordered GT >= TL >= CF on storage ratios [0.25, 0.75]" +
                       (order_detail.empty() ? "" : " except" + order_detail));

  double best_gap = -1.0, mid_gap = -1.0;
  for (size_t g = 0; g < result.grid.size(); ++g) {
    const double gap = result.cell(g, tl).eta_mean - result.cell(g, cf).eta_mean;
    best_gap = std::max(best_gap, gap);
    if (result.plot_values[g] > 0.2 && result.plot_values[g] < 0.8) mid_gap = std::max(mid_gap, gap);
  }
  c.check(best_gap >= 0.10, "(c) peak TL-over-CF satisfaction gap " + Criterion::format(best_gap) +
                                " >= 0.10");
  c.check(mid_gap > 0.0, "TL-over-CF gap is positive inside the (0.2, 0.8) storage window (peak " +
                             Criterion::format(mid_gap) + ")");

  const double terminal = result.cell(result.grid.size() - 1, gt).eta_mean;
  c.check(std::abs(terminal - 0.87) <= 0.10, "(d) ground-truth terminal satisfaction " +
                                                 Criterion::format(terminal) +
                                                 " within 0.87 +/- 0.10");
  c.finish(600.0);
}

// --- criterion 6: correspondence sweep ------------------------------------

void criterion_6() {
  Criterion c(6, "correspondence sweep, R = 1000: negative transfer and the crossing window");
  ExperimentConfig cfg;
  cfg.policies = {Policy::kGroundTruth, Policy::kRandom, Policy::kCf, Policy::kTl};
  const SweepResult result = run_sweep(cfg, "correspondence", default_grid("correspondence", cfg));
  const size_t cf = policy_index(result, Policy::kCf);
  const size_t tl = policy_index(result, Policy::kTl);

  auto offload = [&](size_t g, size_t p) { return 1.0 - result.cell(g, p).rho_mean; };

  c.check(offload(0, tl) <= offload(0, cf) + 0.02,
          "scrambled correspondence offloads no more than CF + 0.02 (TL " +
              Criterion::format(offload(0, tl)) + " vs CF " + Criterion::format(offload(0, cf)) +
              ")");

  // smallest grid point from which TL dominates CF at every later point
  size_t from = result.grid.size();
  for (size_t g = result.grid.size(); g-- > 0;) {
    if (offload(g, tl) > offload(g, cf)) from = g;
    else break;
  }
  const bool has_crossing = from < result.grid.size() && from > 0 &&
                            result.grid[from] > 0.3 && result.grid[from] < 0.8;
  c.check(has_crossing,
          from < result.grid.size()
              ? "TL offload overtakes CF from ratio " + Criterion::format(result.grid[from]) +
                    " onward, inside (0.3, 0.8)"
              : "TL offload never overtakes CF");

  // spearman rank trend of TL load over ratios in [0.5, 1]: must point down
  std::vector<double> tail;
  for (size_t g = 0; g < result.grid.size(); ++g)
    if (result.grid[g] >= 0.5 - 1e-9) tail.push_back(result.cell(g, tl).rho_mean);
  std::vector<double> ranks(tail.size());
  for (size_t i = 0; i < tail.size(); ++i)
    for (size_t j = 0; j < tail.size(); ++j)
      if (tail[j] < tail[i] || (tail[j] == tail[i] && j < i)) ++ranks[i];
  const double n = static_cast<double>(tail.size());
  double num = 0.0;
  for (size_t i = 0; i < ranks.size(); ++i) {
    const double dx = i - (n - 1) / 2.0;
    const double dy = ranks[i] - (n - 1) / 2.0;
    num += dx * dy;
  }
  c.check(num < 0.0, "TL load trends downward over ratios in [0.5, 1] (spearman numerator " +
                         Criterion::format(num) + ")");
  c.finish(600.0);
}

// --- criterion 7: concentration sweep direction ---------------------------

void criterion_7() {
  Criterion c(7, "source-domain concentration: satisfaction falls as demand flattens");
  ExperimentConfig cfg;
  cfg.policies = {Policy::kTl};
  const SweepResult result = run_sweep(cfg, "beta", {2.0, 100.0});
  const double low = result.cell(0, 0).eta_mean;
  const double high = result.cell(1, 0).eta_mean;
  c.check(low - high >= 0.01, "TL satisfaction at beta=2 (" + Criterion::format(low) +
                                  ") exceeds beta=100 (" + Criterion::format(high) +
                                  ") by >= 0.01");
  c.finish(600.0);
}

// --- criterion 8: byte-identical reruns -----------------------------------

void criterion_8() {
  Criterion c(8, "re-running a sweep with identical config and seed is byte-identical");
  ExperimentConfig cfg;
  cfg.realizations = 50;  // quick-mode scale
  const std::vector<double> grid = {0.0, 12.0, 24.0, 32.0};
  const SweepResult a = run_sweep(cfg, "storage", grid);
  const SweepResult b = run_sweep(cfg, "storage", grid);
  emit_csv(a, "acceptance_rerun_a.csv");
  emit_csv(b, "acceptance_rerun_b.csv");
  const std::string bytes_a = slurp("acceptance_rerun_a.csv");
  c.check(!bytes_a.empty() && bytes_a == slurp("acceptance_rerun_b.csv"),
          "storage sweep CSV, R = 50, two runs byte-identical");
  std::remove("acceptance_rerun_a.csv");
  std::remove("acceptance_rerun_b.csv");
  c.finish();
}

}  // namespace

int main() {
  std::printf("edgecache acceptance suite\n");
  const auto start = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 8 criteria failed (%.1f s total)\n", g_failures, elapsed);
  return g_failures;
}
