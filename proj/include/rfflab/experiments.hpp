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

// Downstream experiments: MMD error under feature redraws for fixed
// two-sample data, and KRR prediction drift against the uniform-error budget.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "rfflab/downstream.hpp"
#include "rfflab/features.hpp"
#include "rfflab/kernels.hpp"
#include "rfflab/parallel.hpp"
#include "rfflab/rng.hpp"

namespace rfflab {

// Data streams are decorrelated from the spectral streams that may share a seed.
inline constexpr std::uint64_t kDataStreamSalt = 0xD1B54A32D192ED03ULL;

struct TwoSampleData {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Y;
};

/// X ~ N(0, I_2); Y ~ 0.95 N(0, I_2) + 0.05 N(0, I_2 / 4).
inline TwoSampleData sample_mixture_data(Eigen::Index n, Eigen::Index m, std::uint64_t seed) {
  detail::require(n >= 1 && m >= 1, "sample sizes must be positive");
  RandomStream rng(seed ^ kDataStreamSalt);
  TwoSampleData data{Eigen::MatrixXd(n, 2), Eigen::MatrixXd(m, 2)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) data.X(i, j) = rng.normal();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double scale = rng.uniform() < 0.05 ? 0.5 : 1.0;
    for (int j = 0; j < 2; ++j) data.Y(i, j) = scale * rng.normal();
  }
  return data;
}

struct MmdExperimentConfig {
  Eigen::Index n = 1000;
  Eigen::Index m = 1000;
  double bandwidth = 1.0;
  std::vector<Eigen::Index> dims{50, 100, 500, 1000, 5000};
  std::vector<Variant> variants{Variant::Tilde, Variant::Breve};
  int redraws = 50;
  std::uint64_t data_seed = 1;
  std::uint64_t base_seed = 0;  // redraw r uses spectral seed base_seed + r
  unsigned threads = 0;
};

struct MmdErrorRecord {
  Variant variant;
  Eigen::Index D;
  int redraw;
  double estimate;
  double abs_error;
};

struct MmdExperimentResult {
  double exact = 0.0;  // pairwise biased MMD^2
  std::vector<MmdErrorRecord> records;
};

/// Biased MMD^2 from features vs. the exact pairwise value, X and Y fixed.
inline MmdExperimentResult run_mmd_experiment(const MmdExperimentConfig& config) {
  detail::require(config.redraws >= 1, "redraws must be >= 1");
  const auto kernel = ShiftInvariantKernel::gaussian(config.bandwidth, 2);
  const auto data = sample_mixture_data(config.n, config.m, config.data_seed);
  MmdExperimentResult result;
  result.exact = mmd2(kernel, data.X, data.Y).value;
  const unsigned threads = config.threads ? config.threads : worker_count();
  for (const auto variant : config.variants)
    for (const auto D : config.dims) {
      std::vector<MmdErrorRecord> block(config.redraws);
      parallel_for(
          static_cast<std::size_t>(config.redraws),
          [&](std::size_t r) {
            const auto fc = make_feature_config(variant, D, kernel, config.base_seed + r);
            const auto draw = draw_for(fc, kernel);
            const double est = (mean_embedding(fc, draw, data.X) - mean_embedding(fc, draw, data.Y)).squaredNorm();
            block[r] = {variant, D, static_cast<int>(r), est, std::abs(est - result.exact)};
          },
          threads);
      result.records.insert(result.records.end(), block.begin(), block.end());
    }
  return result;
}

struct RegressionData {
  Eigen::MatrixXd X_train;
  Eigen::VectorXd y_train;
  Eigen::MatrixXd X_test;
};

/// x ~ N(0, I_d); y = sum_j sin(2 x_j) + noise * N(0, 1).
inline RegressionData make_regression_data(Eigen::Index n_train, Eigen::Index n_test, int d, double noise,
                                           std::uint64_t seed) {
  detail::require(n_train >= 1 && n_test >= 1 && d >= 1, "invalid regression data sizes");
  RandomStream rng(seed ^ kDataStreamSalt);
  RegressionData data{Eigen::MatrixXd(n_train, d), Eigen::VectorXd(n_train), Eigen::MatrixXd(n_test, d)};
  for (Eigen::Index i = 0; i < n_train; ++i) {
    double y = 0.0;
    for (int j = 0; j < d; ++j) {
      data.X_train(i, j) = rng.normal();
      y += std::sin(2.0 * data.X_train(i, j));
    }
    data.y_train(i) = y + noise * rng.normal();
  }
  for (Eigen::Index i = 0; i < n_test; ++i)
    for (int j = 0; j < d; ++j) data.X_test(i, j) = rng.normal();
  return data;
}

struct KrrExperimentConfig {
  Eigen::Index n_train = 200;
  Eigen::Index n_test = 50;
  int d = 2;
  double bandwidth = 1.0;
  std::vector<double> lambda0s{0.1, 1.0};
  Eigen::Index D = 2000;
  std::vector<Variant> variants{Variant::Tilde, Variant::Breve};
  int seeds = 20;  // seed s uses data and spectral seed base_seed + s
  std::uint64_t base_seed = 0;
  double noise = 0.1;
  unsigned threads = 0;
};

struct KrrDriftRecord {
  Variant variant;
  Eigen::Index D;
  double lambda0;
  int seed;
  Eigen::Index test_index;
  double drift;      // |h_feature(x) - h_exact(x)|
  double bound;      // (lambda0 + 1) / lambda0^2 sigma_y eps_obs
  double eps_obs;    // max |s - k| over train/train and train/test pairs
};

/// Exact-kernel KRR vs. KRR on the reconstructed Gram matrix, per test point.
inline std::vector<KrrDriftRecord> run_krr_drift_experiment(const KrrExperimentConfig& config) {
  detail::require(config.seeds >= 1, "seeds must be >= 1");
  const auto kernel = ShiftInvariantKernel::gaussian(config.bandwidth, config.d);
  const unsigned threads = config.threads ? config.threads : worker_count();
  std::vector<KrrDriftRecord> records;
  for (const auto variant : config.variants) {
    std::vector<std::vector<KrrDriftRecord>> per_seed(config.seeds);
    parallel_for(
        static_cast<std::size_t>(config.seeds),
        [&](std::size_t s) {
          const std::uint64_t seed = config.base_seed + s;
          const auto data = make_regression_data(config.n_train, config.n_test, config.d, config.noise, seed);
          const auto fc = make_feature_config(variant, config.D, kernel, seed);
          const auto draw = draw_for(fc, kernel);
          const auto z_train = embed(fc, draw, data.X_train);
          const auto z_test = embed(fc, draw, data.X_test);
          const Eigen::MatrixXd K = kernel_matrix(kernel, data.X_train, data.X_train);
          const Eigen::MatrixXd Kx = kernel_matrix(kernel, data.X_train, data.X_test);
          const Eigen::MatrixXd K_hat = reconstruct(z_train, z_train);
          const Eigen::MatrixXd Kx_hat = reconstruct(z_train, z_test);
          const double eps_obs = std::max((K_hat - K).cwiseAbs().maxCoeff(), (Kx_hat - Kx).cwiseAbs().maxCoeff());
          for (const double lambda0 : config.lambda0s) {
            const auto exact = krr_fit(K, data.y_train, lambda0);
            const auto approx = krr_fit(K_hat, data.y_train, lambda0);
            const double bound = krr_drift_bound(exact.sigma_y, lambda0, eps_obs);
            for (Eigen::Index t = 0; t < config.n_test; ++t) {
              const double drift = std::abs(krr_predict(approx, Kx_hat.col(t)) - krr_predict(exact, Kx.col(t)));
              per_seed[s].push_back({variant, config.D, lambda0, static_cast<int>(s), t, drift, bound, eps_obs});
            }
          }
        },
        threads);
    for (auto& v : per_seed) records.insert(records.end(), v.begin(), v.end());
  }
  return records;
}

}  // namespace rfflab
