// D2D source domain: Chinese restaurant process seating, its closed-form
// seating-configuration probability, and the mapping from seatings to a
// sparse ratings matrix.
#pragma once

#include <cstdint>
#include <vector>

#include "demand.hpp"

namespace edgecache {

struct CrpConfig {
  double concentration = 2.0;  // pull toward opening a new table
  int n_customers = 32;
  int n_rounds = 1;  // selections per customer
};

// One realized seating. Tables are indexed by opening order; assignment holds
// one table index per selection, in selection order.
struct SeatingOutcome {
  std::vector<int> assignment;
  std::vector<int> occupancy;  // per occupied table, all > 0
  int n_tables() const { return static_cast<int>(occupancy.size()); }
};

// One sequential seating of n_customers. Customer k (counting those already
// seated) joins occupied table t with probability m_t / (k + concentration)
// and opens a new table with probability concentration / (k + concentration);
// the first customer always opens table 0.
SeatingOutcome crp_sample(const CrpConfig& cfg, uint64_t rng_seed);

// log P(outcome) via log-gamma. Exponentiating reproduces the product of the
// sequential seating probabilities exactly.
double crp_log_prob(const SeatingOutcome& outcome, double concentration);

// Runs n_rounds independent seatings that share one global table namespace
// (round-local table t is content t) and turns selection counts into ratings:
// user n's rating of content f = (selections of f by n) / n_rounds, with zero
// counts absent. The matrix is N x (max tables opened in a round + f0_padding).
RatingsMatrix crp_to_ratings(const CrpConfig& cfg, uint64_t rng_seed, int f0_padding = 0);

}  // namespace edgecache
