#include "crp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace edgecache {

namespace {

void check_config(const CrpConfig& cfg) {
  if (cfg.concentration <= 0.0) throw std::invalid_argument("crp: concentration must be > 0");
  if (cfg.n_customers < 1) throw std::invalid_argument("crp: n_customers must be >= 1");
  if (cfg.n_rounds < 1) throw std::invalid_argument("crp: n_rounds must be >= 1");
}

// one seating pass: every customer selects once, starting from empty tables
std::vector<int> seat_customers(int n_customers, double concentration, Rng& rng,
                                std::vector<int>& occupancy) {
  occupancy.clear();
  std::vector<int> assignment(n_customers);
  for (int customer = 0; customer < n_customers; ++customer) {
    const double u = rng.uniform() * (static_cast<double>(customer) + concentration);
    int table = static_cast<int>(occupancy.size());  // new table unless an occupied one wins
    double acc = 0.0;
    for (int t = 0; t < static_cast<int>(occupancy.size()); ++t) {
      acc += occupancy[t];
      if (u < acc) {
        table = t;
        break;
      }
    }
    if (table == static_cast<int>(occupancy.size()))
      occupancy.push_back(1);
    else
      ++occupancy[table];
    assignment[customer] = table;
  }
  return assignment;
}

}  // namespace

SeatingOutcome crp_sample(const CrpConfig& cfg, uint64_t rng_seed) {
  check_config(cfg);
  Rng rng(rng_seed);
  SeatingOutcome out;
  out.assignment = seat_customers(cfg.n_customers, cfg.concentration, rng, out.occupancy);
  return out;
}

double crp_log_prob(const SeatingOutcome& outcome, double concentration) {
  if (concentration <= 0.0) throw std::invalid_argument("crp_log_prob: concentration must be > 0");
  long total = 0;
  for (int m : outcome.occupancy) {
    if (m <= 0) throw std::invalid_argument("crp_log_prob: occupancy counts must be > 0");
    total += m;
  }
  double logp = outcome.n_tables() * std::log(concentration) + std::lgamma(concentration) -
                std::lgamma(concentration + static_cast<double>(total));
  for (int m : outcome.occupancy) logp += std::lgamma(static_cast<double>(m));  // (m-1)!
  return logp;
}

RatingsMatrix crp_to_ratings(const CrpConfig& cfg, uint64_t rng_seed, int f0_padding) {
  check_config(cfg);
  if (f0_padding < 0) throw std::invalid_argument("crp_to_ratings: f0_padding must be >= 0");

  // n_rounds independent seatings on one global table namespace: round-local
  // table t is content t in every round, so early tables aggregate the pull
  // of every session
  Rng rng(rng_seed);
  std::vector<std::vector<int>> counts(cfg.n_customers);
  std::vector<int> occupancy;
  int n_tables = 0;
  for (int round = 0; round < cfg.n_rounds; ++round) {
    const std::vector<int> assignment = seat_customers(cfg.n_customers, cfg.concentration, rng, occupancy);
    n_tables = std::max(n_tables, static_cast<int>(occupancy.size()));
    for (int customer = 0; customer < cfg.n_customers; ++customer) {
      auto& row = counts[customer];
      if (static_cast<int>(row.size()) <= assignment[customer]) row.resize(assignment[customer] + 1, 0);
      ++row[assignment[customer]];
    }
  }

  RatingsMatrix ratings;
  ratings.n_users = cfg.n_customers;
  ratings.n_contents = n_tables + f0_padding;
  for (int n = 0; n < cfg.n_customers; ++n)
    for (int f = 0; f < static_cast<int>(counts[n].size()); ++f)
      if (counts[n][f] > 0)
        ratings.entries.push_back({n, f, static_cast<double>(counts[n][f]) / cfg.n_rounds});
  return ratings;
}

}  // namespace edgecache
