// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vfr/types.hpp"

namespace vfr {

// A user posting or reposting an item. `is_original` marks an authored post
// (as opposed to a repost of a friend's item).
struct AdoptionEvent {
  UserId user = 0;
  ItemId item = 0;
  std::int64_t time = 0;  // seconds since epoch
  bool is_original = false;

  friend bool operator==(const AdoptionEvent&, const AdoptionEvent&) = default;
};

// Bijection between external string ids and dense indices in [0, n).
class IdMap {
 public:
  std::int32_t add(const std::string& name);  // existing index if already present
  std::optional<std::int32_t> find(std::string_view name) const;
  const std::string& name(std::int32_t id) const;
  std::int32_t size() const { return static_cast<std::int32_t>(names_.size()); }

  friend bool operator==(const IdMap& a, const IdMap& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::int32_t> index_;
};

// Token dictionary built from corpus-wide counts; words below the count
// cutoff are out-of-vocabulary.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Words ordered by first appearance across the given token lists.
  static Vocabulary build(const std::vector<std::vector<std::string>>& docs, int min_count);

  std::int32_t size() const { return static_cast<std::int32_t>(words_.size()); }
  const std::string& word(std::int32_t w) const { return words_.at(static_cast<std::size_t>(w)); }
  std::optional<std::int32_t> find(std::string_view w) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.words_ == b.words_; }

  std::vector<std::string> words_;  // index -> word

 private:
  std::unordered_map<std::string, std::int32_t> index_;
  void rebuild_index();
  friend class Corpus;
};

struct IngestOptions {
  double window_days = 0.0;   // <= 0: span between earliest and latest event
  int min_token_count = 5;    // vocabulary cutoff
  int min_item_adopters = 0;  // 0 = filter off
};

// Per-file line accounting: kept + sum(dropped) == lines.
struct IngestReport {
  struct FileCounts {
    std::int64_t lines = 0;
    std::int64_t kept = 0;
    std::map<std::string, std::int64_t> dropped;  // reason -> count
    std::int64_t dropped_total() const;
  };
  FileCounts edges, adoptions, items;
};

// Immutable after ingest; safe for concurrent readers.
class Corpus {
 public:
  IdMap users;
  IdMap items;
  std::vector<std::vector<UserId>> friends;    // per user, sorted: users they follow
  std::vector<std::vector<UserId>> followers;  // reverse adjacency, sorted
  std::vector<AdoptionEvent> events;           // sorted by (user, item)
  std::vector<std::vector<ItemId>> user_items;      // adopted items per user, sorted
  std::vector<std::vector<UserId>> item_users;      // adopters per item, sorted
  std::vector<std::vector<ItemId>> user_originals;  // authored items per user, sorted
  Vocabulary vocab;
  std::vector<std::vector<std::int32_t>> item_tokens;  // per item, vocabulary indices
  double window_days = 0.0;

  std::int32_t num_users() const { return users.size(); }
  std::int32_t num_items() const { return items.size(); }

  const std::vector<UserId>& friends_of(UserId u) const;
  const std::vector<UserId>& adopters_of(ItemId j) const;
  // Union of friends' adopted/authored items, sorted.
  std::vector<ItemId> stream_of(UserId u) const;
  bool is_original(UserId u, ItemId j) const;
  bool has_adopted(UserId u, ItemId j) const;

  // Same users/items/graph/texts with a different event subset; adoption
  // indices are rebuilt. Used for fold-masked training corpora.
  Corpus with_events(std::vector<AdoptionEvent> new_events) const;

  void save(const std::string& path) const;
  static Corpus load(const std::string& path);

  bool operator==(const Corpus& other) const;

 private:
  void check_user(UserId u) const;
  void check_item(ItemId j) const;
};

// Lowercased, URL/mention/punctuation-stripped, whitespace-split tokens;
// tokens shorter than 2 chars and stop-list words removed.
std::vector<std::string> tokenize(std::string_view raw);

bool is_stopword(std::string_view word);

Corpus ingest(const std::string& edges_path, const std::string& adoptions_path,
              const std::string& items_path, const IngestOptions& opt = {},
              IngestReport* report = nullptr);

}  // namespace vfr
