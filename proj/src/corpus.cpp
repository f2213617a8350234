// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#include "vfr/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "vfr/io_util.hpp"

namespace vfr {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// IdMap / Vocabulary

std::int32_t IdMap::add(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<std::int32_t>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

std::optional<std::int32_t> IdMap::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& IdMap::name(std::int32_t id) const {
  return names_.at(static_cast<std::size_t>(id));
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& docs, int min_count) {
  std::unordered_map<std::string, std::int64_t> counts;
  std::vector<std::string> order;  // first-appearance order
  for (const auto& doc : docs) {
    for (const auto& w : doc) {
      auto [it, fresh] = counts.emplace(w, 0);
      if (fresh) order.push_back(w);
      ++it->second;
    }
  }
  Vocabulary v;
  for (const auto& w : order) {
    if (counts[w] >= min_count) v.words_.push_back(w);
  }
  v.rebuild_index();
  return v;
}

void Vocabulary::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < words_.size(); ++i)
    index_.emplace(words_[i], static_cast<std::int32_t>(i));
}

std::optional<std::int32_t> Vocabulary::find(std::string_view w) const {
  auto it = index_.find(std::string(w));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

// Function words plus platform noise (rt/via/amp). Kept small on purpose;
// content words like "now" stay.
const std::unordered_set<std::string>& stopword_set() {
  static const std::unordered_set<std::string> kStop = {
      "a",         "about",   "above",  "after",   "again",    "all",     "am",
      "an",        "and",     "any",    "are",     "as",       "at",      "be",
      "because",   "been",    "before", "being",   "below",    "between", "both",
      "but",       "by",      "can",    "cannot",  "could",    "did",     "do",
      "does",      "doing",   "down",   "during",  "each",     "few",     "for",
      "from",      "further", "had",    "has",     "have",     "having",  "he",
      "her",       "here",    "hers",   "herself", "him",      "himself", "his",
      "how",       "if",      "in",     "into",    "is",       "it",      "its",
      "itself",    "just",    "me",     "more",    "most",     "my",      "myself",
      "no",        "nor",     "not",    "of",      "off",      "on",      "once",
      "only",      "or",      "other",  "our",     "ours",     "ourselves", "out",
      "over",      "own",     "same",   "she",     "should",   "so",      "some",
      "such",      "than",    "that",   "the",     "their",    "theirs",  "them",
      "themselves", "then",   "there",  "these",   "they",     "this",    "those",
      "through",   "to",      "too",    "under",   "until",    "up",      "very",
      "was",       "we",      "were",   "what",    "when",     "where",   "which",
      "while",     "who",     "whom",   "why",     "will",     "with",    "would",
      "you",       "your",    "yours",  "yourself", "yourselves",
      "rt",        "via",     "amp",    "http",    "https",
  };
  return kStop;
}

bool looks_like_url(std::string_view t) {
  return t.starts_with("http://") || t.starts_with("https://") || t.starts_with("www.") ||
         t.find("t.co/") != std::string_view::npos;
}

}  // namespace

bool is_stopword(std::string_view word) {
  return stopword_set().count(std::string(word)) > 0;
}

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = raw.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    std::size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
    if (j > i) {
      std::string_view piece = raw.substr(i, j - i);
      if (!looks_like_url(piece) && piece[0] != '@') {
        std::string tok;
        tok.reserve(piece.size());
        for (char c : piece) {
          const auto uc = static_cast<unsigned char>(c);
          if (std::isalnum(uc)) tok.push_back(static_cast<char>(std::tolower(uc)));
        }
        if (tok.size() >= 2 && !is_stopword(tok)) out.push_back(std::move(tok));
      }
    }
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ingestion

namespace {

struct StagedEdge {
  std::string follower, friend_;
};
struct StagedAdoption {
  std::string user, item;
  std::int64_t time = 0;
  bool orig = false;
};
struct StagedItem {
  std::string item;
  std::vector<std::string> tokens;
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

[[noreturn]] void malformed(const std::string& path, std::size_t line_no, const std::string& why) {
  throw DataError(path + ":" + std::to_string(line_no) + ": malformed line (" + why + ")");
}

}  // namespace

Corpus ingest(const std::string& edges_path, const std::string& adoptions_path,
              const std::string& items_path, const IngestOptions& opt, IngestReport* report) {
  IngestReport local;
  IngestReport& rep = report ? *report : local;
  rep = IngestReport{};

  // --- items.jsonl
  std::vector<StagedItem> staged_items;
  std::unordered_set<std::string> item_seen;
  {
    const auto lines = read_lines(items_path);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
      ++rep.items.lines;
      if (lines[ln].empty()) {
        ++rep.items.dropped["blank_line"];
        continue;
      }
      json j;
      try {
        j = json::parse(lines[ln]);
      } catch (const json::exception& e) {
        malformed(items_path, ln + 1, e.what());
      }
      if (!j.is_object() || !j.contains("item") || !j.contains("text") ||
          !j["item"].is_string() || !j["text"].is_string())
        malformed(items_path, ln + 1, "expected {\"item\":str,\"text\":str}");
      std::string id = j["item"].get<std::string>();
      if (!item_seen.insert(id).second) {
        ++rep.items.dropped["duplicate_item"];
        continue;
      }
      staged_items.push_back({std::move(id), tokenize(j["text"].get<std::string>())});
      ++rep.items.kept;
    }
  }

  // --- edges.tsv
  std::vector<StagedEdge> staged_edges;
  std::set<std::pair<std::string, std::string>> edge_seen;
  {
    const auto lines = read_lines(edges_path);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
      ++rep.edges.lines;
      if (lines[ln].empty()) {
        ++rep.edges.dropped["blank_line"];
        continue;
      }
      const auto tab = lines[ln].find('\t');
      if (tab == std::string::npos || tab == 0 || tab + 1 >= lines[ln].size() ||
          lines[ln].find('\t', tab + 1) != std::string::npos)
        malformed(edges_path, ln + 1, "expected follower<TAB>friend");
      std::string follower = lines[ln].substr(0, tab);
      std::string friend_ = lines[ln].substr(tab + 1);
      if (follower == friend_) {
        ++rep.edges.dropped["self_loop"];
        continue;
      }
      if (!edge_seen.emplace(follower, friend_).second) {
        ++rep.edges.dropped["duplicate_edge"];
        continue;
      }
      staged_edges.push_back({std::move(follower), std::move(friend_)});
      ++rep.edges.kept;
    }
  }

  // --- adoptions.jsonl
  std::vector<StagedAdoption> staged_adoptions;
  std::set<std::pair<std::string, std::string>> adoption_seen;
  {
    const auto lines = read_lines(adoptions_path);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
      ++rep.adoptions.lines;
      if (lines[ln].empty()) {
        ++rep.adoptions.dropped["blank_line"];
        continue;
      }
      json j;
      try {
        j = json::parse(lines[ln]);
      } catch (const json::exception& e) {
        malformed(adoptions_path, ln + 1, e.what());
      }
      if (!j.is_object() || !j.contains("user") || !j.contains("item") || !j.contains("t") ||
          !j.contains("orig") || !j["user"].is_string() || !j["item"].is_string() ||
          !j["t"].is_number_integer() || !j["orig"].is_boolean())
        malformed(adoptions_path, ln + 1,
                  "expected {\"user\":str,\"item\":str,\"t\":int,\"orig\":bool}");
      StagedAdoption a{j["user"].get<std::string>(), j["item"].get<std::string>(),
                       j["t"].get<std::int64_t>(), j["orig"].get<bool>()};
      if (!item_seen.count(a.item))
        throw DataError(adoptions_path + ":" + std::to_string(ln + 1) +
                        ": adoption references unknown item id \"" + a.item + "\"");
      if (!adoption_seen.emplace(a.user, a.item).second) {
        ++rep.adoptions.dropped["duplicate_adoption"];
        continue;
      }
      staged_adoptions.push_back(std::move(a));
      ++rep.adoptions.kept;
    }
  }

  // --- observation window
  if (!staged_adoptions.empty() && opt.window_days > 0.0) {
    std::int64_t t_min = staged_adoptions.front().time;
    for (const auto& a : staged_adoptions) t_min = std::min(t_min, a.time);
    const double cutoff = static_cast<double>(t_min) + opt.window_days * 86400.0;
    std::vector<StagedAdoption> kept;
    kept.reserve(staged_adoptions.size());
    for (auto& a : staged_adoptions) {
      if (static_cast<double>(a.time) <= cutoff) {
        kept.push_back(std::move(a));
      } else {
        ++rep.adoptions.dropped["outside_window"];
        --rep.adoptions.kept;
      }
    }
    staged_adoptions = std::move(kept);
  }

  // --- optional low-adoption item filter
  if (opt.min_item_adopters > 0) {
    std::unordered_map<std::string, std::int64_t> adopters;
    for (const auto& a : staged_adoptions) ++adopters[a.item];
    std::unordered_set<std::string> drop;
    for (const auto& it : staged_items) {
      auto found = adopters.find(it.item);
      const std::int64_t n = found == adopters.end() ? 0 : found->second;
      if (n < opt.min_item_adopters) drop.insert(it.item);
    }
    if (!drop.empty()) {
      std::vector<StagedItem> kept_items;
      for (auto& it : staged_items) {
        if (drop.count(it.item)) {
          ++rep.items.dropped["below_min_adopters"];
          --rep.items.kept;
        } else {
          kept_items.push_back(std::move(it));
        }
      }
      staged_items = std::move(kept_items);
      std::vector<StagedAdoption> kept_adoptions;
      for (auto& a : staged_adoptions) {
        if (drop.count(a.item)) {
          ++rep.adoptions.dropped["item_filtered"];
          --rep.adoptions.kept;
        } else {
          kept_adoptions.push_back(std::move(a));
        }
      }
      staged_adoptions = std::move(kept_adoptions);
    }
  }

  if (staged_items.empty() || staged_adoptions.empty())
    throw DataError("empty dataset: no items or no adoption events after ingestion");

  // --- dense ids: users by first appearance (edges then adoptions), items in file order
  Corpus c;
  for (const auto& e : staged_edges) {
    c.users.add(e.follower);
    c.users.add(e.friend_);
  }
  for (const auto& a : staged_adoptions) c.users.add(a.user);
  for (const auto& it : staged_items) c.items.add(it.item);
  if (c.users.size() == 0) throw DataError("empty dataset: no users");

  const auto n_users = static_cast<std::size_t>(c.users.size());
  const auto n_items = static_cast<std::size_t>(c.items.size());
  c.friends.resize(n_users);
  c.followers.resize(n_users);
  for (const auto& e : staged_edges) {
    const auto f = *c.users.find(e.follower);
    const auto g = *c.users.find(e.friend_);
    c.friends[static_cast<std::size_t>(f)].push_back(g);
    c.followers[static_cast<std::size_t>(g)].push_back(f);
  }
  for (auto& v : c.friends) std::sort(v.begin(), v.end());
  for (auto& v : c.followers) std::sort(v.begin(), v.end());

  c.events.reserve(staged_adoptions.size());
  for (const auto& a : staged_adoptions)
    c.events.push_back({*c.users.find(a.user), *c.items.find(a.item), a.time, a.orig});
  std::sort(c.events.begin(), c.events.end(), [](const AdoptionEvent& a, const AdoptionEvent& b) {
    return std::tie(a.user, a.item) < std::tie(b.user, b.item);
  });

  c.user_items.resize(n_users);
  c.item_users.resize(n_items);
  c.user_originals.resize(n_users);
  for (const auto& ev : c.events) {
    c.user_items[static_cast<std::size_t>(ev.user)].push_back(ev.item);
    c.item_users[static_cast<std::size_t>(ev.item)].push_back(ev.user);
    if (ev.is_original) c.user_originals[static_cast<std::size_t>(ev.user)].push_back(ev.item);
  }
  for (auto& v : c.user_items) std::sort(v.begin(), v.end());
  for (auto& v : c.item_users) std::sort(v.begin(), v.end());
  for (auto& v : c.user_originals) std::sort(v.begin(), v.end());

  // --- vocabulary and token indexing
  std::vector<std::vector<std::string>> raw_tokens(n_items);
  for (const auto& it : staged_items)
    raw_tokens[static_cast<std::size_t>(*c.items.find(it.item))] = it.tokens;
  c.vocab = Vocabulary::build(raw_tokens, opt.min_token_count);
  c.item_tokens.resize(n_items);
  for (std::size_t j = 0; j < n_items; ++j) {
    for (const auto& w : raw_tokens[j]) {
      if (auto idx = c.vocab.find(w)) c.item_tokens[j].push_back(*idx);
    }
  }

  // --- window
  if (opt.window_days > 0.0) {
    c.window_days = opt.window_days;
  } else {
    std::int64_t t_min = c.events.front().time, t_max = c.events.front().time;
    for (const auto& ev : c.events) {
      t_min = std::min(t_min, ev.time);
      t_max = std::max(t_max, ev.time);
    }
    c.window_days = static_cast<double>(t_max - t_min) / 86400.0;
    if (c.window_days <= 0.0) c.window_days = 1.0;  // degenerate single-instant data
  }

  return c;
}

// ---------------------------------------------------------------------------
// Corpus views

void Corpus::check_user(UserId u) const {
  if (u < 0 || u >= num_users())
    throw std::out_of_range("unknown user id " + std::to_string(u));
}

void Corpus::check_item(ItemId j) const {
  if (j < 0 || j >= num_items())
    throw std::out_of_range("unknown item id " + std::to_string(j));
}

const std::vector<UserId>& Corpus::friends_of(UserId u) const {
  check_user(u);
  return friends[static_cast<std::size_t>(u)];
}

const std::vector<UserId>& Corpus::adopters_of(ItemId j) const {
  check_item(j);
  return item_users[static_cast<std::size_t>(j)];
}

std::vector<ItemId> Corpus::stream_of(UserId u) const {
  check_user(u);
  std::vector<ItemId> out;
  for (UserId f : friends[static_cast<std::size_t>(u)]) {
    const auto& its = user_items[static_cast<std::size_t>(f)];
    out.insert(out.end(), its.begin(), its.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Corpus::is_original(UserId u, ItemId j) const {
  check_user(u);
  const auto& v = user_originals[static_cast<std::size_t>(u)];
  return std::binary_search(v.begin(), v.end(), j);
}

bool Corpus::has_adopted(UserId u, ItemId j) const {
  check_user(u);
  const auto& v = user_items[static_cast<std::size_t>(u)];
  return std::binary_search(v.begin(), v.end(), j);
}

Corpus Corpus::with_events(std::vector<AdoptionEvent> new_events) const {
  Corpus c = *this;
  std::sort(new_events.begin(), new_events.end(),
            [](const AdoptionEvent& a, const AdoptionEvent& b) {
              return std::tie(a.user, a.item) < std::tie(b.user, b.item);
            });
  c.events = std::move(new_events);
  const auto n_users = static_cast<std::size_t>(num_users());
  const auto n_items = static_cast<std::size_t>(num_items());
  c.user_items.assign(n_users, {});
  c.item_users.assign(n_items, {});
  c.user_originals.assign(n_users, {});
  for (const auto& ev : c.events) {
    c.user_items[static_cast<std::size_t>(ev.user)].push_back(ev.item);
    c.item_users[static_cast<std::size_t>(ev.item)].push_back(ev.user);
    if (ev.is_original) c.user_originals[static_cast<std::size_t>(ev.user)].push_back(ev.item);
  }
  for (auto& v : c.user_items) std::sort(v.begin(), v.end());
  for (auto& v : c.item_users) std::sort(v.begin(), v.end());
  for (auto& v : c.user_originals) std::sort(v.begin(), v.end());
  return c;
}

// ---------------------------------------------------------------------------
// Serialization

static constexpr char kCorpusMagic[8] = {'V', 'F', 'R', 'C', 'O', 'R', 'P', '\x01'};

void Corpus::save(const std::string& path) const {
  BinWriter w(path, kCorpusMagic);
  w.u64(static_cast<std::uint64_t>(num_users()));
  for (std::int32_t i = 0; i < num_users(); ++i) w.str(users.name(i));
  w.u64(static_cast<std::uint64_t>(num_items()));
  for (std::int32_t j = 0; j < num_items(); ++j) w.str(items.name(j));
  w.u64(friends.size());
  for (const auto& v : friends) w.vec_i32(v);
  w.u64(events.size());
  for (const auto& ev : events) {
    w.u32(static_cast<std::uint32_t>(ev.user));
    w.u32(static_cast<std::uint32_t>(ev.item));
    w.i64(ev.time);
    w.u32(ev.is_original ? 1 : 0);
  }
  w.u64(static_cast<std::uint64_t>(vocab.size()));
  for (std::int32_t t = 0; t < vocab.size(); ++t) w.str(vocab.word(t));
  w.u64(item_tokens.size());
  for (const auto& v : item_tokens) w.vec_i32(v);
  w.f64(window_days);
}

Corpus Corpus::load(const std::string& path) {
  BinReader r(path, kCorpusMagic);
  Corpus c;
  const auto n_users = r.u64();
  for (std::uint64_t i = 0; i < n_users; ++i) c.users.add(r.str());
  const auto n_items = r.u64();
  for (std::uint64_t j = 0; j < n_items; ++j) c.items.add(r.str());
  const auto n_fr = r.u64();
  c.friends.resize(n_fr);
  c.followers.resize(n_users);
  for (auto& v : c.friends) v = r.vec_i32();
  for (std::size_t u = 0; u < c.friends.size(); ++u)
    for (UserId g : c.friends[u]) c.followers[static_cast<std::size_t>(g)].push_back(static_cast<UserId>(u));
  for (auto& v : c.followers) std::sort(v.begin(), v.end());
  const auto n_ev = r.u64();
  std::vector<AdoptionEvent> evs(n_ev);
  for (auto& ev : evs) {
    ev.user = static_cast<UserId>(r.u32());
    ev.item = static_cast<ItemId>(r.u32());
    ev.time = r.i64();
    ev.is_original = r.u32() != 0;
  }
  const auto n_vocab = r.u64();
  for (std::uint64_t t = 0; t < n_vocab; ++t) c.vocab.words_.push_back(r.str());
  c.vocab.rebuild_index();
  const auto n_tok = r.u64();
  c.item_tokens.resize(n_tok);
  for (auto& v : c.item_tokens) v = r.vec_i32();
  c.window_days = r.f64();
  Corpus out = c.with_events(std::move(evs));
  return out;
}

bool Corpus::operator==(const Corpus& other) const {
  return users == other.users && items == other.items && friends == other.friends &&
         events == other.events && vocab == other.vocab && item_tokens == other.item_tokens &&
         window_days == other.window_days;
}

std::int64_t IngestReport::FileCounts::dropped_total() const {
  std::int64_t n = 0;
  for (const auto& [_, v] : dropped) n += v;
  return n;
}

}  // namespace vfr
