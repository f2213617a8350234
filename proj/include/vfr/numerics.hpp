// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 the vfr authors
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace vfr {

// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

// log(normal_cdf(x)), stable for large negative x where the CDF underflows.
double log_normal_cdf(double x);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value of a Student-t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Pearson correlation; NaN when either side has zero variance.
template <class DA, class DB>
double pearson(const Eigen::MatrixBase<DA>& x, const Eigen::MatrixBase<DB>& y) {
  const auto n = x.size();
  if (n != y.size() || n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mx = x.template cast<double>().mean();
  const double my = y.template cast<double>().mean();
  const auto cx = (x.template cast<double>().array() - mx).eval();
  const auto cy = (y.template cast<double>().array() - my).eval();
  const double sxx = (cx * cx).sum();
  const double syy = (cy * cy).sum();
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (cx * cy).sum() / std::sqrt(sxx * syy);
}

// Ranks in [1, n], ties receive the average of the tied positions.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman rank correlation (Pearson on average ranks).
double spearman(std::span<const double> x, std::span<const double> y);

// FNV-1a 64-bit digest; manifests record input files with it.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace vfr
