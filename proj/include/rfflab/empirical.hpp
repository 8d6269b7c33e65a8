// Copyright 2026 The rfflab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Monte-Carlo harness for the approximation error on a grid: per-trial
// max |f| and mean f^2 over all pairs of grid points, empirical survival
// curves, and log-log slope regression.

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "rfflab/errors.hpp"
#include "rfflab/features.hpp"
#include "rfflab/kernels.hpp"
#include "rfflab/parallel.hpp"

namespace rfflab {

struct ExperimentConfig {
  ShiftInvariantKernel kernel = ShiftInvariantKernel::gaussian(1.0, 1);
  std::vector<Variant> variants{Variant::Tilde, Variant::Breve};
  std::vector<Eigen::Index> dims{50, 100, 200, 500, 1000, 2000, 5000, 10000};
  double half_width = 3.0;  // domain [-b, b]^d
  int grid_points = 1000;   // per axis
  int trials = 100;
  std::uint64_t base_seed = 0;
  std::size_t memory_limit_bytes = std::size_t{2} << 30;
  unsigned threads = 0;  // 0: worker_count()
};

struct TrialStats {
  Variant variant = Variant::Tilde;
  Eigen::Index D = 0;
  std::vector<double> max_abs_error;
  std::vector<double> mean_sq_error;
};

/// Row-block size for the pairwise error products: blocks of at most 64 MB.
inline constexpr std::size_t kErrorBlockBytes = std::size_t{64} << 20;

inline void validate(const ExperimentConfig& c) {
  if (c.kernel.dim() != 1 && c.kernel.dim() != 2)
    throw ConfigError("max-error experiments support d = 1 or 2 only");
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  if (c.grid_points < 2) throw ConfigError("grid points must be >= 2");
  if (!(c.half_width > 0.0)) throw ConfigError("domain half-width must be positive");
  if (c.variants.empty() || c.dims.empty()) throw ConfigError("need at least one variant and one D");
  for (const auto v : c.variants)
    for (const auto D : c.dims) {
      try {
        validate_dimension(v, D);
      } catch (const InputError& e) {
        throw ConfigError(e.what());
      }
    }
}

/// Evenly spaced grid on [-b, b]^d, `per_axis` points per axis, first axis
/// varying fastest.
inline Eigen::MatrixXd grid_points(int d, double half_width, int per_axis) {
  detail::require(per_axis >= 2 && d >= 1, "grid needs >= 2 points per axis");
  const Eigen::VectorXd axis = Eigen::VectorXd::LinSpaced(per_axis, -half_width, half_width);
  Eigen::Index n = 1;
  for (int j = 0; j < d; ++j) n *= per_axis;
  Eigen::MatrixXd X(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index rem = i;
    for (int j = 0; j < d; ++j) {
      X(i, j) = axis(rem % per_axis);
      rem /= per_axis;
    }
  }
  return X;
}

/// Bytes one trial needs at embedding dimension D on n points.
inline std::size_t trial_memory_bytes(Eigen::Index D, Eigen::Index n) {
  const auto dn = static_cast<std::size_t>(D) * static_cast<std::size_t>(n);
  const std::size_t block_rows = std::max<std::size_t>(1, kErrorBlockBytes / (8 * static_cast<std::size_t>(n)));
  return 8 * (2 * dn + std::min<std::size_t>(block_rows, n) * static_cast<std::size_t>(n));
}

struct TrialError {
  double max_abs = 0.0;
  double mean_sq = 0.0;
};

/// Max |f| and mean f^2 over all ordered pairs of rows of X for one draw.
/// Only the upper triangle is formed; off-diagonal pairs count twice.
inline TrialError trial_error(const ShiftInvariantKernel& kernel, Variant variant, Eigen::Index D,
                              const Eigen::MatrixXd& X, std::uint64_t seed) {
  const auto config = make_feature_config(variant, D, kernel, seed);
  const auto draw = draw_for(config, kernel);
  const EmbeddedSet Z = embed(config, draw, X);
  const Eigen::Index n = X.rows();
  const Eigen::Index block =
      std::max<Eigen::Index>(1, static_cast<Eigen::Index>(kErrorBlockBytes / (8 * static_cast<std::size_t>(n))));
  TrialError out;
  double sum_sq = 0.0;
  Eigen::MatrixXd S;
  for (Eigen::Index i0 = 0; i0 < n; i0 += block) {
    const Eigen::Index rows = std::min(block, n - i0);
    const Eigen::Index cols = n - i0;
    S.noalias() = Z.features.middleCols(i0, rows).transpose() * Z.features.rightCols(cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Eigen::Index j = i0 + c;
      for (Eigen::Index r = 0; r < rows && i0 + r <= j; ++r) {
        const Eigen::Index i = i0 + r;
        const double f = S(r, c) - kernel.from_sq_norm((X.row(i) - X.row(j)).squaredNorm());
        out.max_abs = std::max(out.max_abs, std::abs(f));
        sum_sq += (i == j ? 1.0 : 2.0) * f * f;
      }
    }
  }
  out.mean_sq = sum_sq / (static_cast<double>(n) * static_cast<double>(n));
  return out;
}

/// One TrialStats per (variant, D), variants outermost. Trial t uses the
/// spectral seed base_seed + t for every (variant, D).
inline std::vector<TrialStats> run_max_error_trials(const ExperimentConfig& config) {
  validate(config);
  const Eigen::MatrixXd X = grid_points(config.kernel.dim(), config.half_width, config.grid_points);
  const unsigned threads = config.threads ? config.threads : worker_count();
  const Eigen::Index max_D = *std::max_element(config.dims.begin(), config.dims.end());
  const std::size_t need = trial_memory_bytes(max_D, X.rows()) * threads;
  if (need > config.memory_limit_bytes)
    throw ConfigError("experiment needs about " + std::to_string(need >> 20) + " MB, over the limit of " +
                      std::to_string(config.memory_limit_bytes >> 20) + " MB; reduce D, grid points or threads");

  std::vector<TrialStats> all;
  for (const auto variant : config.variants)
    for (const auto D : config.dims) {
      TrialStats stats{variant, D, std::vector<double>(config.trials), std::vector<double>(config.trials)};
      parallel_for(
          static_cast<std::size_t>(config.trials),
          [&](std::size_t t) {
            const auto e = trial_error(config.kernel, variant, D, X, config.base_seed + t);
            stats.max_abs_error[t] = e.max_abs;
            stats.mean_sq_error[t] = e.mean_sq;
          },
          threads);
      all.push_back(std::move(stats));
    }
  return all;
}

/// Same trials as run_max_error_trials; mean_sq_error estimates ||f||_mu^2
/// for mu the uniform probability measure on the domain squared.
inline std::vector<TrialStats> run_l2_error_trials(const ExperimentConfig& config) {
  return run_max_error_trials(config);
}

struct SurvivalPoint {
  double epsilon;
  double survival;  // fraction of trials with max error > epsilon
};

inline std::vector<SurvivalPoint> survival_curve(const TrialStats& stats, const std::vector<double>& epsilons) {
  detail::require(!stats.max_abs_error.empty(), "survival curve of an empty trial set");
  std::vector<double> sorted = stats.max_abs_error;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<SurvivalPoint> curve;
  curve.reserve(epsilons.size());
  for (const double eps : epsilons) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), eps);
    curve.push_back({eps, static_cast<double>(above) / n});
  }
  return curve;
}

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double ci_lo = 0.0;  // 95% t-interval on the slope
  double ci_hi = 0.0;
  std::size_t points = 0;
};

/// OLS of log(mean) on log(D).
inline SlopeFit loglog_slope(const std::vector<double>& dims, const std::vector<double>& means) {
  detail::require(dims.size() == means.size(), "D values and means differ in length");
  detail::require(std::set<double>(dims.begin(), dims.end()).size() >= 3, "slope fit needs >= 3 distinct D values");
  const std::size_t n = dims.size();
  Eigen::VectorXd x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    detail::require(dims[i] > 0.0 && means[i] > 0.0, "slope fit needs positive D and means");
    x(i) = std::log(dims[i]);
    y(i) = std::log(means[i]);
  }
  const double xbar = x.mean(), ybar = y.mean();
  const double sxx = (x.array() - xbar).square().sum();
  const double sxy = ((x.array() - xbar) * (y.array() - ybar)).sum();
  SlopeFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  const double rss = (y.array() - fit.intercept - fit.slope * x.array()).square().sum();
  const double se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  const boost::math::students_t dist(static_cast<double>(n - 2));
  const double t = boost::math::quantile(dist, 0.975);
  fit.ci_lo = fit.slope - t * se;
  fit.ci_hi = fit.slope + t * se;
  return fit;
}

inline double mean_of(const std::vector<double>& v) {
  detail::require(!v.empty(), "mean of an empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// Standard error of the mean.
inline double standard_error(const std::vector<double>& v) {
  detail::require(v.size() >= 2, "standard error needs at least two values");
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace rfflab
