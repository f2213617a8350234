// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vfr/corpus.hpp"
#include "vfr/rng.hpp"
#include "vfr/topic_model.hpp"
#include "vfr/types.hpp"
#include "vfr/visibility.hpp"

namespace vfr {

// Model variants; the ablations double as the comparison baselines.
//   full           visibility + fitness + relevance, text-anchored item vectors
//   relevance_only user/item vectors only (v = 1, eta frozen at 0, no text anchor)
//   fitness_only   item fitness only (u frozen at 0)
//   vip_like       no text anchor (uniform phi, free item vectors)
//   softmax_ctr    text-anchored but v = 1
enum class Variant { full, relevance_only, fitness_only, vip_like, softmax_ctr };

std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

enum class NegativePool { global, stream };

struct HyperParams {
  int k = 100;
  double sigma_u2 = 1e4;
  double sigma_theta2 = 1e4;
  double sigma_eta2 = 10.0;
  double learn_rate = 0.05;
  double lr_discount = 0.9;
  int epochs = 30;
  std::uint64_t seed = 0;
};

struct TrainOptions {
  Variant variant = Variant::full;
  NegativePool negatives = NegativePool::global;
  bool originals_visible = false;  // score authored originals with v = 1
};

// One user's observed set: adopted items plus an equal-sized negative sample.
// Positives come first; both halves are sorted by item id.
struct TrainingBatch {
  UserId user = 0;
  std::vector<ItemId> observed;
  std::int32_t num_pos = 0;

  bool is_positive(std::size_t idx) const {
    return idx < static_cast<std::size_t>(num_pos);
  }
};

class ModelParams {
 public:
  Matrix u;      // N x K user topic profiles
  Matrix theta;  // D x K item topic profiles
  Vector eta;    // D item fitness
  Vector v;      // per-user visibility as used by this variant (ones when gated off)
  HyperParams hyper;
  Variant variant = Variant::full;
  bool originals_visible = false;

  std::int32_t num_users() const { return static_cast<std::int32_t>(u.rows()); }
  std::int32_t num_items() const { return static_cast<std::int32_t>(theta.rows()); }

  // v_eff * (u_i . theta_j + eta_j); v_eff is 1 for authored originals when
  // originals_visible is set.
  double score(const Corpus& corpus, UserId i, ItemId j) const;

  void save(const std::string& path) const;
  static ModelParams load(const std::string& path);
  nlohmann::json to_json() const;
};

// Softmax over the batch's observed set, max-subtracted for overflow safety.
Vector batch_probs(const ModelParams& params, const Corpus& corpus, const TrainingBatch& batch);

// Probability that the adoption falls on item j among the batch's observed
// set. j must be in the batch; empty batches are an error.
double adoption_prob(const ModelParams& params, const Corpus& corpus, const TrainingBatch& batch,
                     ItemId j);

struct ObjectiveValue {
  double prior = 0.0;       // Gaussian priors on u, eta and the text-anchor pull on theta
  double likelihood = 0.0;  // softmax adoption term over the batches
  double visibility_log = 0.0;  // sum_i log v_i; constant given the rate model, reported only
  double total() const { return prior + likelihood; }
};

ObjectiveValue objective(const ModelParams& params, const Matrix& phi_eff, const Corpus& corpus,
                         std::span<const TrainingBatch> batches);

// Exact gradient of prior + likelihood at the current parameters (all
// users/items; batch terms added where they apply). Used by the
// finite-difference checks, not by the SGD loop.
struct BatchGradient {
  Matrix du;
  Matrix dtheta;
  Vector deta;
};
BatchGradient batch_gradient(const ModelParams& params, const Matrix& phi_eff,
                             const Corpus& corpus, std::span<const TrainingBatch> batches);

// One stochastic update for one user batch, learning rate
// learn_rate * lr_discount^epoch. Per-item increments are computed from the
// batch-start parameters and applied together.
void gradient_step(ModelParams& params, const Matrix& phi_eff, const Corpus& corpus,
                   const TrainingBatch& batch, const HyperParams& hyper, int epoch);

// Negative sample of size min(|positives|, |pool|) drawn uniformly without
// replacement from the chosen pool minus the user's adopted items.
TrainingBatch make_batch(const Corpus& corpus, UserId user, NegativePool pool, Rng& rng);

// Variant-resolved inputs for training.
Matrix effective_phi(const TopicModelState* lda, Variant variant, std::int32_t n_items, int k);
Vector effective_visibility(const VisibilityTable* vis, Variant variant, std::int32_t n_users);

ModelParams train(const Corpus& corpus, const TopicModelState* lda, const VisibilityTable* vis,
                  const HyperParams& hyper, const TrainOptions& opts);

// Top-x candidates by score, ties broken by item id ascending.
std::vector<ItemId> predict_topx(const ModelParams& params, const Corpus& corpus, UserId user,
                                 std::span<const ItemId> candidates, int x);

}  // namespace vfr
