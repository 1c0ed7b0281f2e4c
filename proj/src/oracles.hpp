// Brute-force cross-checks that stay independent of the code paths they
// verify: exhaustive set-partition totals for the seating probability,
// central-difference gradients, and exhaustive cache-subset search.
#pragma once

#include <cstdint>

namespace edgecache {

struct OracleReport {
  int checks = 0;
  int failures = 0;
  double worst_error = 0.0;
};

// Sums the exponentiated seating log-probability over every set partition of
// n customers, for n = 1..6 and several concentrations; each total must be 1
// within 1e-9.
OracleReport crp_partition_oracle();

// Compares the analytic objective gradient against central finite
// differences on random small instances; relative error must stay below 1e-5.
OracleReport gradient_oracle(uint64_t seed, int n_instances);

// With equal content sizes, greedy-by-score placement must match the
// exhaustive score-sum-maximizing subset under the storage budget.
OracleReport placement_oracle(uint64_t seed, int n_instances);

}  // namespace edgecache
