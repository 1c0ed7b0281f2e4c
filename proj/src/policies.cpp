#include "policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rng.hpp"

namespace edgecache {

namespace {

CachePlan empty_plan(int n_stations, int n_contents, const std::vector<double>& budgets) {
  for (double s : budgets)
    if (!(s >= 0.0)) throw std::invalid_argument("cache plan: storage budgets must be >= 0");
  CachePlan plan;
  plan.n_stations = n_stations;
  plan.n_contents = n_contents;
  plan.x.assign(static_cast<size_t>(n_stations) * n_contents, 0);
  plan.storage_budgets = budgets;
  return plan;
}

}  // namespace

CachePlan place_greedy(const std::vector<std::vector<double>>& station_scores,
                       const Catalog& catalog, const std::vector<double>& budgets) {
  const int n_stations = static_cast<int>(budgets.size());
  const int n_contents = catalog.n_contents();
  if (static_cast<int>(station_scores.size()) != n_stations)
    throw std::invalid_argument("place_greedy: one score vector per station required");
  CachePlan plan = empty_plan(n_stations, n_contents, budgets);

  std::vector<int> order(n_contents);
  for (int m = 0; m < n_stations; ++m) {
    const std::vector<double>& scores = station_scores[m];
    if (static_cast<int>(scores.size()) != n_contents)
      throw std::invalid_argument("place_greedy: score vector length mismatch");
    for (double s : scores)
      if (!std::isfinite(s)) throw std::invalid_argument("place_greedy: scores must be finite");
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&scores](int a, int b) { return scores[a] > scores[b]; });
    double used = 0.0;
    for (int f : order) {
      if (used + catalog.size_mbit[f] <= budgets[m]) {
        plan.x[static_cast<size_t>(m) * n_contents + f] = 1;
        used += catalog.size_mbit[f];
      }
      // an oversized content is skipped, smaller ones further down may fit
    }
  }
  return plan;
}

CachePlan place_random(const Catalog& catalog, const std::vector<double>& budgets,
                       uint64_t rng_seed) {
  const int n_stations = static_cast<int>(budgets.size());
  const int n_contents = catalog.n_contents();
  CachePlan plan = empty_plan(n_stations, n_contents, budgets);

  Rng rng(rng_seed);
  std::vector<int> order(n_contents);
  for (int m = 0; m < n_stations; ++m) {
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    double used = 0.0;
    for (int f : order) {
      if (used + catalog.size_mbit[f] > budgets[m]) break;  // stop at the first non-fit
      plan.x[static_cast<size_t>(m) * n_contents + f] = 1;
      used += catalog.size_mbit[f];
    }
  }
  return plan;
}

std::vector<std::vector<double>> station_scores(const std::vector<double>& pred, int n_users,
                                                int n_contents, const std::vector<int>& assoc,
                                                int n_stations) {
  if (pred.size() != static_cast<size_t>(n_users) * n_contents)
    throw std::invalid_argument("station_scores: prediction matrix size mismatch");
  if (static_cast<int>(assoc.size()) != n_users)
    throw std::invalid_argument("station_scores: assoc size mismatch");

  std::vector<std::vector<double>> scores(n_stations, std::vector<double>(n_contents, 0.0));
  std::vector<int> members(n_stations, 0);
  for (int n = 0; n < n_users; ++n) {
    const int m = assoc[n];
    if (m < 0 || m >= n_stations) throw std::invalid_argument("station_scores: assoc station out of range");
    ++members[m];
    for (int f = 0; f < n_contents; ++f) scores[m][f] += pred[static_cast<size_t>(n) * n_contents + f];
  }

  std::vector<double> global_mean(n_contents, 0.0);
  for (int n = 0; n < n_users; ++n)
    for (int f = 0; f < n_contents; ++f) global_mean[f] += pred[static_cast<size_t>(n) * n_contents + f];
  for (double& v : global_mean) v /= n_users;

  for (int m = 0; m < n_stations; ++m) {
    if (members[m] == 0) {
      scores[m] = global_mean;
    } else {
      for (double& v : scores[m]) v /= members[m];
    }
  }
  return scores;
}

}  // namespace edgecache
