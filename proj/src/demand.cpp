#include "demand.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rng.hpp"

namespace edgecache {

Catalog Catalog::uniform(int n_contents, double size, double bitrate) {
  if (n_contents < 1) throw std::invalid_argument("catalog: need at least one content");
  if (size <= 0.0 || bitrate <= 0.0) throw std::invalid_argument("catalog: sizes and bitrates must be positive");
  Catalog c;
  c.size_mbit.assign(n_contents, size);
  c.bitrate_mbps.assign(n_contents, bitrate);
  return c;
}

std::vector<double> zipf_pmf(double exponent, int catalog_size) {
  if (catalog_size < 1) throw std::invalid_argument("zipf_pmf: catalog_size must be >= 1");
  if (exponent < 0.0) throw std::invalid_argument("zipf_pmf: exponent must be >= 0");
  std::vector<double> pmf(catalog_size);
  double norm = 0.0;
  for (int f = 0; f < catalog_size; ++f) {
    pmf[f] = std::pow(static_cast<double>(f + 1), -exponent);
    norm += pmf[f];
  }
  for (double& v : pmf) v /= norm;
  return pmf;
}

namespace {

// Global ranking perturbed by n_swaps random adjacent transpositions.
std::vector<int> perturbed_ranking(int n, int n_swaps, Rng& rng) {
  std::vector<int> ranking(n);
  std::iota(ranking.begin(), ranking.end(), 0);
  for (int s = 0; s < n_swaps && n > 1; ++s) {
    const int i = static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
    std::swap(ranking[i], ranking[i + 1]);
  }
  return ranking;
}

}  // namespace

PopularityMatrix make_popularity(const ZipfLaw& zipf, int n_users, double coherence,
                                 uint64_t rng_seed, int station_id) {
  if (n_users < 1) throw std::invalid_argument("make_popularity: n_users must be >= 1");
  if (coherence < 0.0 || coherence > 1.0) throw std::invalid_argument("make_popularity: coherence must be in [0, 1]");
  const int F = zipf.catalog_size;
  const std::vector<double> pmf = zipf_pmf(zipf.exponent, F);

  PopularityMatrix pop;
  pop.station_id = station_id;
  pop.n_users = n_users;
  pop.n_contents = F;
  pop.p.assign(static_cast<size_t>(n_users) * F, 0.0);

  Rng rng(rng_seed);
  const int n_swaps = static_cast<int>(std::floor((1.0 - coherence) * F));
  std::vector<int> ranking(F);
  for (int n = 0; n < n_users; ++n) {
    if (coherence == 0.0) {
      // uniform permutation: the fully incoherent endpoint
      std::iota(ranking.begin(), ranking.end(), 0);
      rng.shuffle(ranking);
    } else {
      ranking = perturbed_ranking(F, n_swaps, rng);
    }
    for (int r = 0; r < F; ++r) pop.at(n, ranking[r]) = pmf[r] / n_users;
  }
  return pop;
}

RequestTrace sample_trace(std::span<const PopularityMatrix> station_pops,
                          const std::vector<int>& assoc, double arrival_rate, int horizon,
                          uint64_t rng_seed) {
  if (station_pops.empty()) throw std::invalid_argument("sample_trace: no popularity matrices");
  if (arrival_rate <= 0.0) throw std::invalid_argument("sample_trace: arrival_rate must be > 0");
  if (horizon < 1) throw std::invalid_argument("sample_trace: horizon must be >= 1");
  const int n_users = station_pops[0].n_users;
  const int n_contents = station_pops[0].n_contents;
  if (n_users == 0 || n_contents == 0) throw std::invalid_argument("sample_trace: empty popularity matrix");
  for (const auto& pop : station_pops)
    if (pop.n_users != n_users || pop.n_contents != n_contents)
      throw std::invalid_argument("sample_trace: inconsistent matrix dimensions");
  if (static_cast<int>(assoc.size()) != n_users) throw std::invalid_argument("sample_trace: assoc size mismatch");
  for (int station : assoc)
    if (station < 0 || station >= static_cast<int>(station_pops.size()))
      throw std::invalid_argument("sample_trace: assoc station out of range");

  // Per-user weight = row sum in the user's own station matrix; the content
  // draw then follows the user's conditional row.
  std::vector<double> user_cum(n_users);
  double total = 0.0;
  for (int n = 0; n < n_users; ++n) {
    const PopularityMatrix& pop = station_pops[assoc[n]];
    double row = 0.0;
    for (int f = 0; f < n_contents; ++f) row += pop.at(n, f);
    total += row;
    user_cum[n] = total;
  }
  if (total <= 0.0) throw std::invalid_argument("sample_trace: popularity has no mass");

  Rng rng(rng_seed);
  RequestTrace trace;
  trace.horizon = horizon;
  for (int slot = 0; slot < horizon; ++slot) {
    const int arrivals = rng.poisson(arrival_rate);
    for (int a = 0; a < arrivals; ++a) {
      const double uu = rng.uniform() * total;
      const int user = static_cast<int>(std::lower_bound(user_cum.begin(), user_cum.end(), uu) - user_cum.begin());
      const PopularityMatrix& pop = station_pops[assoc[user]];
      double row = user_cum[user] - (user > 0 ? user_cum[user - 1] : 0.0);
      double uc = rng.uniform() * row;
      int content = n_contents - 1;
      double acc = 0.0;
      for (int f = 0; f < n_contents; ++f) {
        acc += pop.at(user, f);
        if (uc < acc) {
          content = f;
          break;
        }
      }
      trace.requests.push_back({slot, user, assoc[user], content});
    }
  }
  return trace;
}

RatingsMatrix sparsify(const PopularityMatrix& pop, double density, uint64_t rng_seed) {
  if (density <= 0.0 || density > 1.0) throw std::invalid_argument("sparsify: density must be in (0, 1]");
  const size_t n_cells = pop.p.size();
  const size_t n_keep = static_cast<size_t>(std::llround(density * static_cast<double>(n_cells)));

  // Seeded permutation of all cells; lower densities take a prefix, so the
  // sampled sets nest across densities for a fixed seed.
  std::vector<uint32_t> cells(n_cells);
  std::iota(cells.begin(), cells.end(), 0u);
  Rng rng(rng_seed);
  rng.shuffle(cells);

  RatingsMatrix ratings;
  ratings.n_users = pop.n_users;
  ratings.n_contents = pop.n_contents;
  ratings.entries.reserve(n_keep);
  for (size_t i = 0; i < n_keep; ++i) {
    const int user = static_cast<int>(cells[i]) / pop.n_contents;
    const int content = static_cast<int>(cells[i]) % pop.n_contents;
    const double value = pop.at(user, content) * pop.n_users;  // per-user pmf scale
    if (value != 0.0) ratings.entries.push_back({user, content, value});
  }
  return ratings;
}

}  // namespace edgecache
