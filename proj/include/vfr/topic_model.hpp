// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vfr/corpus.hpp"
#include "vfr/types.hpp"

namespace vfr {

struct LdaConfig {
  int k = 100;
  double alpha = -1.0;       // < 0: 50 / k
  double beta_prior = 0.01;  // symmetric word prior
  int iters = 500;
  std::uint64_t seed = 0;
};

// Collapsed Gibbs state plus the point estimates read off the final sweep.
class TopicModelState {
 public:
  int k = 0;
  double alpha = 0.0;
  double beta_prior = 0.0;
  std::vector<std::vector<std::int32_t>> z;  // topic assignment per token
  Eigen::MatrixXi doc_topic;                 // D x K counts
  Eigen::MatrixXi topic_word;                // K x M counts
  Eigen::VectorXi topic_total;               // K
  Matrix phi;   // D x K, row-stochastic; uniform rows for empty documents
  Matrix beta;  // K x M, row-stochastic

  // Recompute phi/beta from the count tables (smoothed point estimates).
  void refresh_estimates();

  void save(const std::string& path) const;  // phi/beta bundle (counts not persisted)
  static TopicModelState load(const std::string& path);
};

TopicModelState fit_lda(const Corpus& corpus, const LdaConfig& cfg);

// sum over documents and token positions of log sum_k phi[d,k] * beta[k,w].
double loglikelihood(const TopicModelState& state, const Corpus& corpus);

// Indices of the n highest-probability words for a topic; ties broken by
// vocabulary index. n larger than the vocabulary is truncated.
std::vector<std::int32_t> top_words(const TopicModelState& state, int topic, int n);

void write_topics_txt(const TopicModelState& state, const Vocabulary& vocab,
                      const std::string& path, int words_per_topic = 20);

}  // namespace vfr
