// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#include "vfr/visibility.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vfr/io_util.hpp"
#include "vfr/numerics.hpp"

namespace vfr {

double ig_upper_tail(double position, double mu, double lambda) {
  if (!std::isfinite(mu) || !std::isfinite(lambda) || mu <= 0.0 || lambda <= 0.0)
    throw std::invalid_argument("ig_upper_tail: mu and lambda must be finite and positive");
  if (!std::isfinite(position) || position < 0.0)
    throw std::invalid_argument("ig_upper_tail: position must be finite and >= 0");
  if (position == 0.0) return 1.0;
  const double sl = std::sqrt(lambda / position);
  const double a = sl * (position / mu - 1.0);
  const double b = sl * (position / mu + 1.0);
  // survival = Phi(-a) - exp(2*lambda/mu) * Phi(-b); second term via logs so
  // large lambda/mu cannot overflow
  const double log_term2 = 2.0 * lambda / mu + log_normal_cdf(-b);
  const double term2 = log_term2 < -745.0 ? 0.0 : std::exp(log_term2);
  const double tail = normal_cdf(-a) - term2;
  return std::min(1.0, std::max(0.0, tail));
}

double visibility(double rho, const SurfingParams& surf) {
  if (!std::isfinite(rho) || rho < 0.0)
    throw std::invalid_argument("visibility: rho must be finite and >= 0");
  if (rho == 0.0) return 1.0;  // all geometric mass at the top position
  const double p = 1.0 / (1.0 + rho);
  const double q = 1.0 - p;
  double weight = p;      // p * q^L
  double tail_mass = q;   // q^(L+1), geometric mass beyond L
  double sum = 0.0;
  for (std::int64_t pos = 0; pos < surf.l_max; ++pos) {
    sum += weight * ig_upper_tail(static_cast<double>(pos), surf.mu, surf.lambda);
    if (tail_mass < surf.tail_tol) break;
    weight *= q;
    tail_mass *= q;
  }
  return std::min(1.0, sum);
}

double expected_backlog(const Corpus& corpus, UserId user, const RateModel& rates,
                        BacklogMode mode) {
  const auto n_friends = static_cast<double>(corpus.friends_of(user).size());
  const double received = rates.posts_received_per_friend * n_friends;
  const double posts_per_day =
      static_cast<double>(corpus.user_items[static_cast<std::size_t>(user)].size()) /
      corpus.window_days;
  const double factor =
      mode == BacklogMode::visits_per_post ? rates.visits_per_post : rates.url_visits_per_post;
  const double floor =
      rates.min_visit_rate >= 0.0 ? rates.min_visit_rate : 1.0 / corpus.window_days;
  const double visit_rate = std::max(factor * posts_per_day, floor);
  return received / visit_rate;
}

VisibilityTable build_table(const Corpus& corpus, const RateModel& rates,
                            const SurfingParams& surf, BacklogMode mode, int threads) {
  const auto n = corpus.num_users();
  VisibilityTable table;
  table.rho.resize(n);
  table.v.resize(n);
  parallel_for(n, threads, [&](std::int64_t i) {
    const double rho = expected_backlog(corpus, static_cast<UserId>(i), rates, mode);
    table.rho[i] = rho;
    table.v[i] = visibility(rho, surf);
  });
  return table;
}

void write_visibility_csv(const VisibilityTable& table, const Corpus& corpus,
                          const std::string& path) {
  std::ostringstream out;
  out << "user,rho,v\n";
  for (std::int32_t i = 0; i < corpus.num_users(); ++i)
    out << corpus.users.name(i) << ',' << fmt_double(table.rho[i]) << ',' << fmt_double(table.v[i])
        << '\n';
  write_text_file(path, out.str());
}

VisibilityTable read_visibility_csv(const std::string& path, const Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path);
  VisibilityTable table;
  table.rho = Vector::Zero(corpus.num_users());
  table.v = Vector::Ones(corpus.num_users());
  std::string line;
  std::getline(in, line);  // header
  std::size_t ln = 1;
  std::size_t filled = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw DataError(path + ":" + std::to_string(ln) + ": malformed line (expected user,rho,v)");
    const std::string user = line.substr(0, c1);
    const auto id = corpus.users.find(user);
    if (!id) throw DataError(path + ":" + std::to_string(ln) + ": unknown user id \"" + user + "\"");
    table.rho[*id] = std::strtod(line.c_str() + c1 + 1, nullptr);
    table.v[*id] = std::strtod(line.c_str() + c2 + 1, nullptr);
    ++filled;
  }
  if (filled != static_cast<std::size_t>(corpus.num_users()))
    throw DataError(path + ": visibility table covers " + std::to_string(filled) + " of " +
                    std::to_string(corpus.num_users()) + " users");
  return table;
}

}  // namespace vfr
