// Target-domain demand generation: Zipf content popularity, per-user
// preference matrices, Poisson request traces and sparse training ratings.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace edgecache {

struct ZipfLaw {
  double exponent = 2.0;    // steepness; 0 = uniform
  int catalog_size = 32;
};

// Dense user x content request-probability matrix. The grand sum over all
// (user, content) cells is 1.
struct PopularityMatrix {
  int station_id = 0;
  int n_users = 0;
  int n_contents = 0;
  std::vector<double> p;  // row-major, n_users * n_contents

  double at(int user, int content) const { return p[static_cast<size_t>(user) * n_contents + content]; }
  double& at(int user, int content) { return p[static_cast<size_t>(user) * n_contents + content]; }
};

struct Rating {
  int user = 0;
  int content = 0;
  double value = 0.0;
};

// Sparse observed (user, content, rating) triplets; absent cells are unknown.
struct RatingsMatrix {
  int n_users = 0;
  int n_contents = 0;
  std::vector<Rating> entries;

  double density() const {
    if (n_users == 0 || n_contents == 0) return 0.0;
    return static_cast<double>(entries.size()) / (static_cast<double>(n_users) * n_contents);
  }
};

struct Request {
  int slot = 0;  // arrival slot, integer seconds in [0, horizon)
  int user = 0;
  int station = 0;
  int content = 0;
};

struct RequestTrace {
  std::vector<Request> requests;  // sorted by slot
  int horizon = 0;                // slots
};

// Per-content sizes (Mbit) and bitrate requirements (Mbit/s).
struct Catalog {
  std::vector<double> size_mbit;
  std::vector<double> bitrate_mbps;

  int n_contents() const { return static_cast<int>(size_mbit.size()); }
  static Catalog uniform(int n_contents, double size, double bitrate);
};

// pmf over ranks 1..F, entry f proportional to f^-exponent, normalized.
std::vector<double> zipf_pmf(double exponent, int catalog_size);

// Per-user rows are the Zipf pmf over user-specific content rankings, scaled
// by 1/n_users so the matrix sums to 1. coherence = 1 gives every user the
// global ranking; lower coherence perturbs each user's ranking by
// floor((1 - coherence) * F) random adjacent swaps, and coherence = 0 draws an
// independent uniform permutation per user.
PopularityMatrix make_popularity(const ZipfLaw& zipf, int n_users, double coherence,
                                 uint64_t rng_seed, int station_id = 0);

// Network-wide arrivals per slot are Poisson(arrival_rate); each arrival draws
// a user from the row marginals of that user's station matrix and a content
// from the user's conditional row. station_pops[m] is station m's matrix and
// assoc maps each user to its station.
RequestTrace sample_trace(std::span<const PopularityMatrix> station_pops,
                          const std::vector<int>& assoc, double arrival_rate, int horizon,
                          uint64_t rng_seed);

// Samples round(density * N * F) distinct cells uniformly without replacement
// and keeps the ground-truth values rescaled by n_users (per-user pmf scale).
// On a fixed seed the sampled set at a lower density is a prefix of the set at
// a higher density.
RatingsMatrix sparsify(const PopularityMatrix& pop, double density, uint64_t rng_seed);

}  // namespace edgecache
