// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#include "vfr/topic_model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vfr/io_util.hpp"
#include "vfr/rng.hpp"

namespace vfr {

void TopicModelState::refresh_estimates() {
  const auto d = doc_topic.rows();
  const auto m = topic_word.cols();
  phi.resize(d, k);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double len = static_cast<double>(doc_topic.row(i).sum());
    for (int t = 0; t < k; ++t)
      phi(i, t) = (doc_topic(i, t) + alpha) / (len + k * alpha);
  }
  beta.resize(k, m);
  for (int t = 0; t < k; ++t) {
    const double denom = static_cast<double>(topic_total(t)) + static_cast<double>(m) * beta_prior;
    for (Eigen::Index w = 0; w < m; ++w)
      beta(t, w) = (topic_word(t, w) + beta_prior) / denom;
  }
}

TopicModelState fit_lda(const Corpus& corpus, const LdaConfig& cfg) {
  if (cfg.k < 2) throw std::invalid_argument("fit_lda: k must be >= 2");
  if (cfg.iters < 1) throw std::invalid_argument("fit_lda: iters must be >= 1");
  const auto n_docs = static_cast<Eigen::Index>(corpus.item_tokens.size());
  const auto m = static_cast<Eigen::Index>(corpus.vocab.size());
  bool any_tokens = false;
  for (const auto& doc : corpus.item_tokens) any_tokens |= !doc.empty();
  if (!any_tokens) throw DataError("fit_lda: all documents are empty");

  TopicModelState s;
  s.k = cfg.k;
  s.alpha = cfg.alpha < 0.0 ? 50.0 / cfg.k : cfg.alpha;
  s.beta_prior = cfg.beta_prior;
  s.doc_topic = Eigen::MatrixXi::Zero(n_docs, cfg.k);
  s.topic_word = Eigen::MatrixXi::Zero(cfg.k, m);
  s.topic_total = Eigen::VectorXi::Zero(cfg.k);
  s.z.resize(static_cast<std::size_t>(n_docs));

  Rng rng = make_rng(cfg.seed, 0x1da);
  std::uniform_int_distribution<int> init_topic(0, cfg.k - 1);
  for (Eigen::Index d = 0; d < n_docs; ++d) {
    const auto& doc = corpus.item_tokens[static_cast<std::size_t>(d)];
    auto& zd = s.z[static_cast<std::size_t>(d)];
    zd.resize(doc.size());
    for (std::size_t pos = 0; pos < doc.size(); ++pos) {
      const int t = init_topic(rng);
      zd[pos] = t;
      ++s.doc_topic(d, t);
      ++s.topic_word(t, doc[pos]);
      ++s.topic_total(t);
    }
  }

  std::vector<double> weights(static_cast<std::size_t>(cfg.k));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double m_beta = static_cast<double>(m) * s.beta_prior;
  for (int sweep = 0; sweep < cfg.iters; ++sweep) {
    for (Eigen::Index d = 0; d < n_docs; ++d) {
      const auto& doc = corpus.item_tokens[static_cast<std::size_t>(d)];
      auto& zd = s.z[static_cast<std::size_t>(d)];
      for (std::size_t pos = 0; pos < doc.size(); ++pos) {
        const std::int32_t w = doc[pos];
        const int old_t = zd[pos];
        --s.doc_topic(d, old_t);
        --s.topic_word(old_t, w);
        --s.topic_total(old_t);
        double total = 0.0;
        for (int t = 0; t < cfg.k; ++t) {
          total += (s.doc_topic(d, t) + s.alpha) * (s.topic_word(t, w) + s.beta_prior) /
                   (s.topic_total(t) + m_beta);
          weights[static_cast<std::size_t>(t)] = total;
        }
        const double r = unit(rng) * total;
        int new_t = cfg.k - 1;
        for (int t = 0; t < cfg.k; ++t) {
          if (r < weights[static_cast<std::size_t>(t)]) {
            new_t = t;
            break;
          }
        }
        zd[pos] = new_t;
        ++s.doc_topic(d, new_t);
        ++s.topic_word(new_t, w);
        ++s.topic_total(new_t);
      }
    }
  }

  s.refresh_estimates();
  return s;
}

double loglikelihood(const TopicModelState& state, const Corpus& corpus) {
  double ll = 0.0;
  for (std::size_t d = 0; d < corpus.item_tokens.size(); ++d) {
    for (std::int32_t w : corpus.item_tokens[d]) {
      const double pw = state.phi.row(static_cast<Eigen::Index>(d)).dot(state.beta.col(w));
      ll += std::log(pw);
    }
  }
  return ll;
}

std::vector<std::int32_t> top_words(const TopicModelState& state, int topic, int n) {
  if (topic < 0 || topic >= state.k) throw std::out_of_range("top_words: topic out of range");
  const auto m = state.beta.cols();
  std::vector<std::int32_t> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  const int take = std::min<int>(n, static_cast<int>(m));
  std::partial_sort(idx.begin(), idx.begin() + take, idx.end(),
                    [&](std::int32_t a, std::int32_t b) {
                      const double pa = state.beta(topic, a), pb = state.beta(topic, b);
                      return pa > pb || (pa == pb && a < b);
                    });
  idx.resize(static_cast<std::size_t>(take));
  return idx;
}

void write_topics_txt(const TopicModelState& state, const Vocabulary& vocab,
                      const std::string& path, int words_per_topic) {
  std::ostringstream out;
  for (int t = 0; t < state.k; ++t) {
    out << "topic " << t << ':';
    for (std::int32_t w : top_words(state, t, words_per_topic)) out << ' ' << vocab.word(w);
    out << '\n';
  }
  write_text_file(path, out.str());
}

static constexpr char kLdaMagic[8] = {'V', 'F', 'R', 'L', 'D', 'A', '0', '\x01'};

void TopicModelState::save(const std::string& path) const {
  BinWriter w(path, kLdaMagic);
  w.u32(static_cast<std::uint32_t>(k));
  w.f64(alpha);
  w.f64(beta_prior);
  w.matrix(phi);
  w.matrix(beta);
}

TopicModelState TopicModelState::load(const std::string& path) {
  BinReader r(path, kLdaMagic);
  TopicModelState s;
  s.k = static_cast<int>(r.u32());
  s.alpha = r.f64();
  s.beta_prior = r.f64();
  s.phi = r.matrix();
  s.beta = r.matrix();
  return s;
}

}  // namespace vfr
