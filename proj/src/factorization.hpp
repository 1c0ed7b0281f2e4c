// Low-rank popularity estimation: single-domain regularized matrix
// factorization and joint source+target factorization with an explicit
// content/user correspondence map.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demand.hpp"

namespace edgecache {

// Rank-k factors; column i of user_factors is user i's latent vector, stored
// contiguously (k doubles per entity). Prediction for (i, j) is the dot
// product of the two columns.
struct FactorModel {
  int rank = 0;
  int n_users = 0;
  int n_contents = 0;
  std::vector<double> user_factors;     // rank * n_users
  std::vector<double> content_factors;  // rank * n_contents

  double predict(int user, int content) const {
    const double* u = &user_factors[static_cast<size_t>(user) * rank];
    const double* c = &content_factors[static_cast<size_t>(content) * rank];
    double dot = 0.0;
    for (int d = 0; d < rank; ++d) dot += u[d] * c[d];
    return dot;
  }
};

// Injective partial maps from source entity indices to target entity indices.
// Source indices beyond the map domain (or mapped to a negative value) get
// fresh factor columns in the joint space.
struct CorrespondenceMap {
  std::vector<int> content_map;
  std::vector<int> user_map;
};

struct TlWeights {
  double source_weight = 1.0;
  double target_weight = 1.0;
  double regularization = 0.1;
};

struct SgdOptions {
  double learning_rate = 0.02;
  int epochs = 500;
  double init_scale = 0.05;  // factors start i.i.d. uniform in [-init_scale, init_scale]
};

// Fits user/content factors to the observed triplets by full-batch gradient
// descent on the squared-residual + Frobenius-regularizer objective. If
// objective_trace is given it receives the objective before training and
// after every epoch.
FactorModel cf_fit(const RatingsMatrix& ratings, int rank, double regularization,
                   const SgdOptions& opt, uint64_t rng_seed,
                   std::vector<double>* objective_trace = nullptr);

// Joint factorization over the union index space: mapped source entities
// share the target entity's factor column, unmapped ones get fresh columns
// appended after the target block. Target users/contents therefore occupy
// indices [0, target.n_users) x [0, target.n_contents) of the returned model.
// With source_weight = 0 the target block reproduces cf_fit bit-for-bit under
// the same seed and schedule.
FactorModel tl_fit(const RatingsMatrix& target, const RatingsMatrix& source,
                   const CorrespondenceMap& corr, const TlWeights& weights, int rank,
                   const SgdOptions& opt, uint64_t rng_seed,
                   std::vector<double>* objective_trace = nullptr);

// Dense predictions for the leading n_users x n_contents block, row-major.
std::vector<double> predict_matrix(const FactorModel& model, int n_users, int n_contents);

// Weighted objective and its gradient with respect to every factor entry.
// source may be null (single-system case); ratings indices are in model
// space. Gradients are laid out like the factor arrays.
double objective_and_gradient(const FactorModel& model, const RatingsMatrix& target,
                              const RatingsMatrix* source, const TlWeights& weights,
                              std::vector<double>& grad_users, std::vector<double>& grad_contents);

// A fraction `ratio` of indices map identically; the rest are permuted among
// themselves without fixed points. ratio = 0 yields a uniform random
// permutation, ratio = 1 the identity.
CorrespondenceMap make_correspondence(double ratio, int n_contents, int n_users,
                                      uint64_t rng_seed);

// Plain-text dump: header line "k n_users n_contents", then the user factor
// matrix and the content factor matrix, one entity per row.
void save_model(const FactorModel& model, const std::string& path);

}  // namespace edgecache
