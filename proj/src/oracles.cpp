#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "crp.hpp"
#include "factorization.hpp"
#include "policies.hpp"
#include "rng.hpp"

namespace edgecache {

namespace {

// enumerate set partitions via restricted-growth strings
void for_each_partition(int n, std::vector<int>& block_of, int n_blocks,
                        const std::function<void(const std::vector<int>&, int)>& visit) {
  const int customer = static_cast<int>(block_of.size());
  if (customer == n) {
    visit(block_of, n_blocks);
    return;
  }
  for (int b = 0; b <= n_blocks; ++b) {
    block_of.push_back(b);
    for_each_partition(n, block_of, std::max(n_blocks, b + 1), visit);
    block_of.pop_back();
  }
}

}  // namespace

OracleReport crp_partition_oracle() {
  OracleReport report;
  const double concentrations[] = {0.5, 1.0, 2.0, 10.0};
  for (int n = 1; n <= 6; ++n) {
    for (double beta : concentrations) {
      double total = 0.0;
      std::vector<int> block_of;
      for_each_partition(n, block_of, 0, [&](const std::vector<int>& assignment, int n_blocks) {
        SeatingOutcome outcome;
        outcome.assignment = assignment;
        outcome.occupancy.assign(n_blocks, 0);
        for (int b : assignment) ++outcome.occupancy[b];
        total += std::exp(crp_log_prob(outcome, beta));
      });
      const double err = std::abs(total - 1.0);
      ++report.checks;
      report.worst_error = std::max(report.worst_error, err);
      if (err > 1e-9) ++report.failures;
    }
  }
  return report;
}

OracleReport gradient_oracle(uint64_t seed, int n_instances) {
  OracleReport report;
  Rng rng(seed);
  for (int inst = 0; inst < n_instances; ++inst) {
    const int n_users = 2 + static_cast<int>(rng.below(5));
    const int n_contents = 2 + static_cast<int>(rng.below(5));
    const int rank = 1 + static_cast<int>(rng.below(3));

    FactorModel model;
    model.rank = rank;
    model.n_users = n_users;
    model.n_contents = n_contents;
    model.user_factors.resize(static_cast<size_t>(rank) * n_users);
    model.content_factors.resize(static_cast<size_t>(rank) * n_contents);
    for (double& v : model.user_factors) v = 2.0 * rng.uniform() - 1.0;
    for (double& v : model.content_factors) v = 2.0 * rng.uniform() - 1.0;

    auto random_ratings = [&](int max_entries) {
      RatingsMatrix r;
      r.n_users = n_users;
      r.n_contents = n_contents;
      std::vector<int> cells(n_users * n_contents);
      for (size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<int>(i);
      rng.shuffle(cells);
      const int count = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_entries)));
      for (int i = 0; i < count && i < static_cast<int>(cells.size()); ++i)
        r.entries.push_back({cells[i] / n_contents, cells[i] % n_contents, 2.0 * rng.uniform() - 1.0});
      return r;
    };
    const RatingsMatrix target = random_ratings(n_users * n_contents);
    const bool with_source = rng.below(2) == 1;
    const RatingsMatrix source = with_source ? random_ratings(n_users * n_contents) : RatingsMatrix{};
    const double mus[] = {0.0, 0.1, 0.5};
    const TlWeights weights{with_source ? 0.25 + rng.uniform() : 0.0, 0.25 + rng.uniform(),
                            mus[rng.below(3)]};

    std::vector<double> grad_u, grad_c;
    objective_and_gradient(model, target, with_source ? &source : nullptr, weights, grad_u, grad_c);

    const double h = 1e-6;
    double worst = 0.0;
    auto probe = [&](std::vector<double>& params, const std::vector<double>& grad) {
      for (size_t i = 0; i < params.size(); ++i) {
        std::vector<double> gu, gc;
        const double saved = params[i];
        params[i] = saved + h;
        const double up =
            objective_and_gradient(model, target, with_source ? &source : nullptr, weights, gu, gc);
        params[i] = saved - h;
        const double down =
            objective_and_gradient(model, target, with_source ? &source : nullptr, weights, gu, gc);
        params[i] = saved;
        const double fd = (up - down) / (2.0 * h);
        const double err = std::abs(fd - grad[i]) / std::max({1.0, std::abs(fd), std::abs(grad[i])});
        worst = std::max(worst, err);
      }
    };
    probe(model.user_factors, grad_u);
    probe(model.content_factors, grad_c);

    ++report.checks;
    report.worst_error = std::max(report.worst_error, worst);
    if (worst >= 1e-5) ++report.failures;
  }
  return report;
}

OracleReport placement_oracle(uint64_t seed, int n_instances) {
  OracleReport report;
  Rng rng(seed);
  for (int inst = 0; inst < n_instances; ++inst) {
    const int n_contents = 4 + static_cast<int>(rng.below(9));  // up to 12
    const Catalog catalog = Catalog::uniform(n_contents, 1.0, 1.0);
    std::vector<double> scores(n_contents);
    for (double& s : scores) s = rng.uniform();
    const double budget = rng.uniform() * (n_contents + 0.5);

    const CachePlan plan = place_greedy({scores}, catalog, {budget});
    double greedy_total = 0.0;
    double greedy_size = 0.0;
    for (int f = 0; f < n_contents; ++f)
      if (plan.cached(0, f)) {
        greedy_total += scores[f];
        greedy_size += catalog.size_mbit[f];
      }

    double best_total = 0.0;
    for (uint32_t subset = 0; subset < (1u << n_contents); ++subset) {
      double size = 0.0, total = 0.0;
      for (int f = 0; f < n_contents; ++f)
        if (subset & (1u << f)) {
          size += catalog.size_mbit[f];
          total += scores[f];
        }
      if (size <= budget) best_total = std::max(best_total, total);
    }

    const double err = std::max(best_total - greedy_total, 0.0);
    ++report.checks;
    report.worst_error = std::max(report.worst_error, err);
    if (greedy_size > budget + 1e-12 || err > 1e-9) ++report.failures;
  }
  return report;
}

}  // namespace edgecache
