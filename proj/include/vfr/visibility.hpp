// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#pragma once

#include <cstdint>
#include <string>

#include "vfr/corpus.hpp"
#include "vfr/types.hpp"

namespace vfr {

// Law-of-surfing list-depth model: inverse Gaussian with mean mu (list
// positions) and shape lambda.
struct SurfingParams {
  double mu = 14.0;
  double lambda = 14.0;
  std::int64_t l_max = 1'000'000;  // series truncation cap
  double tail_tol = 1e-12;         // stop once remaining geometric mass is below this
};

// Rate heuristics for the expected stream backlog.
struct RateModel {
  double posts_received_per_friend = 1.4;  // posts/day contributed by each friend
  double visits_per_post = 38.0;           // visits mode
  double url_visits_per_post = 7.6;        // url-posts mode
  double min_visit_rate = -1.0;            // floor; < 0 means 1 visit per window
};

enum class BacklogMode { visits_per_post, url_rule };

struct VisibilityTable {
  Vector rho;  // expected backlog per user
  Vector v;    // average item visibility per user, in (0, 1]
};

// P(surf depth > L): one minus the inverse-Gaussian CDF at L. Exactly 1 at
// L = 0. Throws on non-finite or non-positive mu/lambda.
double ig_upper_tail(double position, double mu, double lambda);

// Expected number of new stream items between visits for one user.
double expected_backlog(const Corpus& corpus, UserId user, const RateModel& rates,
                        BacklogMode mode);

// Average item visibility: geometric position mixture weighted by the
// surfing tail, truncated once the remaining geometric mass drops below
// tail_tol (capped at l_max terms).
double visibility(double rho, const SurfingParams& surf);

VisibilityTable build_table(const Corpus& corpus, const RateModel& rates,
                            const SurfingParams& surf, BacklogMode mode,
                            int threads = 1);

void write_visibility_csv(const VisibilityTable& table, const Corpus& corpus,
                          const std::string& path);
VisibilityTable read_visibility_csv(const std::string& path, const Corpus& corpus);

}  // namespace vfr
