// Cache placement: binary station x content plans under per-station storage
// budgets, built greedily from score vectors or uniformly at random.
#pragma once

#include <cstdint>
#include <vector>

#include "demand.hpp"

namespace edgecache {

struct CachePlan {
  int n_stations = 0;
  int n_contents = 0;
  std::vector<uint8_t> x;  // row-major station x content, entries 0/1
  std::vector<double> storage_budgets;

  bool cached(int station, int content) const {
    return x[static_cast<size_t>(station) * n_contents + content] != 0;
  }
};

// Per station: contents in descending score order (ties to the lower index)
// are admitted while they fit the remaining budget; an oversized content is
// skipped without ending the scan.
CachePlan place_greedy(const std::vector<std::vector<double>>& station_scores,
                       const Catalog& catalog, const std::vector<double>& budgets);

// Per station: a uniform random content order, admitted until the next drawn
// content no longer fits.
CachePlan place_random(const Catalog& catalog, const std::vector<double>& budgets,
                       uint64_t rng_seed);

// Station m's score for content f = mean predicted rating over the users
// associated to m; stations without users fall back to the all-user mean row.
// pred is row-major n_users x n_contents, assoc maps user -> station.
std::vector<std::vector<double>> station_scores(const std::vector<double>& pred, int n_users,
                                                int n_contents, const std::vector<int>& assoc,
                                                int n_stations);

}  // namespace edgecache
