#include "factorization.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rng.hpp"

namespace edgecache {

namespace {

void validate_ratings(const RatingsMatrix& r, const char* who) {
  if (r.entries.empty()) throw std::invalid_argument(std::string(who) + ": ratings must be non-empty");
  std::vector<int64_t> cells;
  cells.reserve(r.entries.size());
  for (const Rating& e : r.entries) {
    if (e.user < 0 || e.user >= r.n_users || e.content < 0 || e.content >= r.n_contents)
      throw std::invalid_argument(std::string(who) + ": rating index out of range");
    if (!std::isfinite(e.value))
      throw std::invalid_argument(std::string(who) + ": non-finite rating");
    cells.push_back(static_cast<int64_t>(e.user) * r.n_contents + e.content);
  }
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
    throw std::invalid_argument(std::string(who) + ": duplicate (user, content) rating");
}

// Factors start i.i.d. uniform in [-scale, scale]. Users and contents draw
// from separate labeled streams so a model with extra appended columns still
// initializes its leading block identically.
void init_factors(FactorModel& model, double scale, uint64_t seed) {
  Rng urng(subseed(seed, "user_factors"));
  Rng crng(subseed(seed, "content_factors"));
  for (double& v : model.user_factors) v = (2.0 * urng.uniform() - 1.0) * scale;
  for (double& v : model.content_factors) v = (2.0 * crng.uniform() - 1.0) * scale;
}

FactorModel fit(int rank, int n_users, int n_contents, const RatingsMatrix& target,
                const RatingsMatrix* source, const TlWeights& weights, const SgdOptions& opt,
                uint64_t seed, std::vector<double>* objective_trace) {
  if (rank < 1) throw std::invalid_argument("fit: rank must be >= 1");
  if (opt.epochs < 0 || opt.learning_rate <= 0.0) throw std::invalid_argument("fit: bad optimizer settings");

  FactorModel model;
  model.rank = rank;
  model.n_users = n_users;
  model.n_contents = n_contents;
  model.user_factors.assign(static_cast<size_t>(rank) * n_users, 0.0);
  model.content_factors.assign(static_cast<size_t>(rank) * n_contents, 0.0);
  init_factors(model, opt.init_scale, seed);

  std::vector<double> grad_u, grad_c;
  if (objective_trace) objective_trace->clear();
  for (int epoch = 0; epoch < opt.epochs; ++epoch) {
    const double obj = objective_and_gradient(model, target, source, weights, grad_u, grad_c);
    if (objective_trace) objective_trace->push_back(obj);
    for (size_t i = 0; i < model.user_factors.size(); ++i)
      model.user_factors[i] -= opt.learning_rate * grad_u[i];
    for (size_t i = 0; i < model.content_factors.size(); ++i)
      model.content_factors[i] -= opt.learning_rate * grad_c[i];
  }
  if (objective_trace)
    objective_trace->push_back(objective_and_gradient(model, target, source, weights, grad_u, grad_c));
  return model;
}

}  // namespace

double objective_and_gradient(const FactorModel& model, const RatingsMatrix& target,
                              const RatingsMatrix* source, const TlWeights& weights,
                              std::vector<double>& grad_users, std::vector<double>& grad_contents) {
  grad_users.assign(model.user_factors.size(), 0.0);
  grad_contents.assign(model.content_factors.size(), 0.0);

  const int k = model.rank;
  double objective = 0.0;
  const std::pair<double, const RatingsMatrix*> systems[2] = {{weights.target_weight, &target},
                                                              {weights.source_weight, source}};
  for (const auto& [weight, ratings] : systems) {
    if (ratings == nullptr || weight == 0.0) continue;
    for (const Rating& r : ratings->entries) {
      const size_t ui = static_cast<size_t>(r.user) * k;
      const size_t ci = static_cast<size_t>(r.content) * k;
      double dot = 0.0;
      for (int d = 0; d < k; ++d) dot += model.user_factors[ui + d] * model.content_factors[ci + d];
      const double residual = dot - r.value;
      objective += weight * residual * residual;
      const double g = 2.0 * weight * residual;
      for (int d = 0; d < k; ++d) {
        grad_users[ui + d] += g * model.content_factors[ci + d];
        grad_contents[ci + d] += g * model.user_factors[ui + d];
      }
    }
  }

  const double mu = weights.regularization;
  double frobenius = 0.0;
  for (size_t i = 0; i < model.user_factors.size(); ++i) {
    frobenius += model.user_factors[i] * model.user_factors[i];
    grad_users[i] += 2.0 * mu * model.user_factors[i];
  }
  for (size_t i = 0; i < model.content_factors.size(); ++i) {
    frobenius += model.content_factors[i] * model.content_factors[i];
    grad_contents[i] += 2.0 * mu * model.content_factors[i];
  }
  return objective + mu * frobenius;
}

FactorModel cf_fit(const RatingsMatrix& ratings, int rank, double regularization,
                   const SgdOptions& opt, uint64_t rng_seed, std::vector<double>* objective_trace) {
  validate_ratings(ratings, "cf_fit");
  if (regularization < 0.0) throw std::invalid_argument("cf_fit: regularization must be >= 0");
  if (rank > std::min(ratings.n_users, ratings.n_contents))
    throw std::invalid_argument("cf_fit: rank exceeds matrix dimensions");
  TlWeights weights{0.0, 1.0, regularization};
  return fit(rank, ratings.n_users, ratings.n_contents, ratings, nullptr, weights, opt, rng_seed,
             objective_trace);
}

FactorModel tl_fit(const RatingsMatrix& target, const RatingsMatrix& source,
                   const CorrespondenceMap& corr, const TlWeights& weights, int rank,
                   const SgdOptions& opt, uint64_t rng_seed, std::vector<double>* objective_trace) {
  validate_ratings(target, "tl_fit(target)");
  validate_ratings(source, "tl_fit(source)");
  if (weights.source_weight < 0.0 || weights.target_weight < 0.0 || weights.regularization < 0.0)
    throw std::invalid_argument("tl_fit: weights must be >= 0");
  if (weights.source_weight == 0.0 && weights.target_weight == 0.0)
    throw std::invalid_argument("tl_fit: at least one system weight must be positive");
  if (rank > std::min(target.n_users, target.n_contents))
    throw std::invalid_argument("tl_fit: rank exceeds target dimensions");

  // Union index space: mapped source entities reuse the target column,
  // unmapped ones are appended after the target block.
  auto build_index = [](const std::vector<int>& map, int n_source, int n_target, const char* what) {
    std::vector<int> column(n_source);
    std::vector<char> used(n_target, 0);
    int next = n_target;
    for (int i = 0; i < n_source; ++i) {
      const int t = (i < static_cast<int>(map.size())) ? map[i] : -1;
      if (t >= 0) {
        if (t >= n_target) throw std::invalid_argument(std::string("tl_fit: ") + what + " map out of range");
        if (used[t]) throw std::invalid_argument(std::string("tl_fit: ") + what + " map not injective");
        used[t] = 1;
        column[i] = t;
      } else {
        column[i] = next++;
      }
    }
    return std::pair<std::vector<int>, int>{std::move(column), next};
  };
  const auto [user_column, n_users_union] = build_index(corr.user_map, source.n_users, target.n_users, "user");
  const auto [content_column, n_contents_union] =
      build_index(corr.content_map, source.n_contents, target.n_contents, "content");

  RatingsMatrix source_joint;
  source_joint.n_users = n_users_union;
  source_joint.n_contents = n_contents_union;
  source_joint.entries.reserve(source.entries.size());
  for (const Rating& r : source.entries)
    source_joint.entries.push_back({user_column[r.user], content_column[r.content], r.value});

  return fit(rank, n_users_union, n_contents_union, target, &source_joint, weights, opt, rng_seed,
             objective_trace);
}

std::vector<double> predict_matrix(const FactorModel& model, int n_users, int n_contents) {
  if (n_users < 1 || n_users > model.n_users || n_contents < 1 || n_contents > model.n_contents)
    throw std::invalid_argument("predict_matrix: requested range outside model dimensions");
  std::vector<double> out(static_cast<size_t>(n_users) * n_contents);
  for (int i = 0; i < n_users; ++i)
    for (int j = 0; j < n_contents; ++j) out[static_cast<size_t>(i) * n_contents + j] = model.predict(i, j);
  return out;
}

CorrespondenceMap make_correspondence(double ratio, int n_contents, int n_users, uint64_t rng_seed) {
  if (ratio < 0.0 || ratio > 1.0) throw std::invalid_argument("make_correspondence: ratio must be in [0, 1]");
  if (n_contents < 0 || n_users < 0) throw std::invalid_argument("make_correspondence: negative dimension");

  auto mixed_permutation = [ratio](int n, Rng& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (n < 2) return perm;
    const int n_fixed = static_cast<int>(std::llround(ratio * n));
    if (n_fixed >= n) return perm;

    std::vector<int> positions(n);
    std::iota(positions.begin(), positions.end(), 0);
    rng.shuffle(positions);
    std::vector<int> moving(positions.begin() + n_fixed, positions.end());
    if (n_fixed == 0) {
      // fully random case: a uniform permutation, fixed points allowed
      std::vector<int> values = moving;
      rng.shuffle(values);
      for (size_t i = 0; i < moving.size(); ++i) perm[moving[i]] = values[i];
      return perm;
    }
    if (moving.size() < 2) return perm;  // a lone leftover has to stay put
    std::vector<int> values;
    for (;;) {  // rejection-sample a fixed-point-free shuffle of the moving set
      values = moving;
      rng.shuffle(values);
      bool clean = true;
      for (size_t i = 0; i < moving.size(); ++i)
        if (values[i] == moving[i]) {
          clean = false;
          break;
        }
      if (clean) break;
    }
    for (size_t i = 0; i < moving.size(); ++i) perm[moving[i]] = values[i];
    return perm;
  };

  CorrespondenceMap corr;
  Rng crng(subseed(rng_seed, "content_correspondence"));
  Rng urng(subseed(rng_seed, "user_correspondence"));
  corr.content_map = mixed_permutation(n_contents, crng);
  corr.user_map = mixed_permutation(n_users, urng);
  return corr;
}

void save_model(const FactorModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out.precision(std::numeric_limits<double>::max_digits10);
  out << model.rank << ' ' << model.n_users << ' ' << model.n_contents << '\n';
  for (int i = 0; i < model.n_users; ++i) {
    for (int d = 0; d < model.rank; ++d)
      out << model.user_factors[static_cast<size_t>(i) * model.rank + d] << (d + 1 == model.rank ? '\n' : ' ');
  }
  for (int j = 0; j < model.n_contents; ++j) {
    for (int d = 0; d < model.rank; ++d)
      out << model.content_factors[static_cast<size_t>(j) * model.rank + d] << (d + 1 == model.rank ? '\n' : ' ');
  }
  if (!out) throw std::runtime_error("save_model: write failed for " + path);
}

}  // namespace edgecache
