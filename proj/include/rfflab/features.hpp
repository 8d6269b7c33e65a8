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

// The two random Fourier embeddings:
//
//   tilde: sqrt(2/D) [sin(w_1.x), cos(w_1.x), ..., sin(w_{D/2}.x), cos(w_{D/2}.x)]
//   breve: sqrt(2/D) [cos(w_1.x + b_1), ..., cos(w_D.x + b_D)]
//
// An EmbeddedSet holds one column per point (D x n, column-major, so each
// point's features are contiguous).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "rfflab/errors.hpp"
#include "rfflab/kernels.hpp"

namespace rfflab {

enum class Variant { Tilde, Breve };

inline std::string_view to_string(Variant v) { return v == Variant::Tilde ? "tilde" : "breve"; }

inline Variant parse_variant(std::string_view name) {
  if (name == "tilde") return Variant::Tilde;
  if (name == "breve") return Variant::Breve;
  throw InputError("unknown variant '" + std::string(name) + "' (expected tilde or breve)");
}

/// Frequencies needed for an embedding of dimension `dim`.
inline Eigen::Index frequency_count(Variant variant, Eigen::Index dim) {
  return variant == Variant::Tilde ? dim / 2 : dim;
}

inline void validate_dimension(Variant variant, Eigen::Index dim) {
  if (variant == Variant::Tilde) {
    detail::require(dim >= 2 && dim % 2 == 0, "tilde embedding dimension must be even and >= 2");
  } else {
    detail::require(dim >= 1, "breve embedding dimension must be >= 1");
  }
}

struct FeatureConfig {
  Variant variant = Variant::Tilde;
  Eigen::Index dim = 2;  // D
  std::string kernel_id;
  std::uint64_t seed = 0;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

inline FeatureConfig make_feature_config(Variant variant, Eigen::Index dim,
                                         const ShiftInvariantKernel& kernel, std::uint64_t seed) {
  validate_dimension(variant, dim);
  return FeatureConfig{variant, dim, kernel.id(), seed};
}

/// The spectral draw matching `config` (frequency count and phases).
inline SpectralDraw draw_for(const FeatureConfig& config, const ShiftInvariantKernel& kernel) {
  validate_dimension(config.variant, config.dim);
  return sample_spectral(kernel, frequency_count(config.variant, config.dim),
                         config.variant == Variant::Breve, config.seed);
}

struct EmbeddedSet {
  Eigen::MatrixXd features;  // D x n
  FeatureConfig config;

  Eigen::Index point_count() const { return features.cols(); }
  Eigen::Index dim() const { return features.rows(); }
};

namespace detail {

inline void check_draw(const FeatureConfig& config, const SpectralDraw& draw) {
  validate_dimension(config.variant, config.dim);
  require(draw.count() == frequency_count(config.variant, config.dim),
          "spectral draw has " + std::to_string(draw.count()) + " frequencies, embedding needs " +
              std::to_string(frequency_count(config.variant, config.dim)));
  require(draw.has_phases() == (config.variant == Variant::Breve),
          "phases must be present exactly for the breve embedding");
}

// Writes the embedding of the points in `X` (rows) into `out` (D x n).
template <typename DerivedX, typename DerivedOut>
void embed_into(Variant variant, const SpectralDraw& draw, const Eigen::MatrixBase<DerivedX>& X,
                Eigen::MatrixBase<DerivedOut>& out) {
  const Eigen::Index count = draw.count();
  const Eigen::Index dim = variant == Variant::Tilde ? 2 * count : count;
  const double scale = std::sqrt(2.0 / static_cast<double>(dim));
  const Eigen::MatrixXd proj = draw.omegas * X.transpose();  // count x n
  if (variant == Variant::Tilde) {
    for (Eigen::Index j = 0; j < proj.cols(); ++j)
      for (Eigen::Index i = 0; i < count; ++i) {
        out(2 * i, j) = scale * std::sin(proj(i, j));
        out(2 * i + 1, j) = scale * std::cos(proj(i, j));
      }
  } else {
    const Eigen::VectorXd& b = *draw.phases;
    for (Eigen::Index j = 0; j < proj.cols(); ++j)
      for (Eigen::Index i = 0; i < count; ++i) out(i, j) = scale * std::cos(proj(i, j) + b(i));
  }
}

}  // namespace detail

/// Embeds the rows of X (n x d).
template <typename Derived>
EmbeddedSet embed(const FeatureConfig& config, const SpectralDraw& draw,
                  const Eigen::MatrixBase<Derived>& X) {
  detail::check_draw(config, draw);
  detail::require(X.cols() == draw.omegas.cols(), "point dimension does not match frequency dimension");
  EmbeddedSet set{Eigen::MatrixXd(config.dim, X.rows()), config};
  detail::embed_into(config.variant, draw, X, set.features);
  return set;
}

/// Mean embedding (1/n) sum_i z(x_i), computed in column blocks so the full
/// D x n matrix is never materialized.
template <typename Derived>
Eigen::VectorXd mean_embedding(const FeatureConfig& config, const SpectralDraw& draw,
                               const Eigen::MatrixBase<Derived>& X, Eigen::Index block = 256) {
  detail::check_draw(config, draw);
  detail::require(X.cols() == draw.omegas.cols(), "point dimension does not match frequency dimension");
  detail::require(X.rows() >= 1, "mean embedding of an empty set");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(config.dim);
  Eigen::MatrixXd buf(config.dim, std::min<Eigen::Index>(block, X.rows()));
  for (Eigen::Index start = 0; start < X.rows(); start += block) {
    const Eigen::Index len = std::min(block, X.rows() - start);
    auto cols = buf.leftCols(len);
    detail::embed_into(config.variant, draw, X.middleRows(start, len), cols);
    sum += cols.rowwise().sum();
  }
  return sum / static_cast<double>(X.rows());
}

/// z(x_i)^T z(y_j) for all pairs, as a dense product.
inline Eigen::MatrixXd reconstruct(const EmbeddedSet& zx, const EmbeddedSet& zy) {
  detail::require(zx.config == zy.config, "embedded sets were built from different configurations");
  detail::require(zx.dim() == zy.dim(), "embedded sets have different dimensions");
  return zx.features.transpose() * zy.features;
}

template <typename DerivedX, typename DerivedY>
Eigen::MatrixXd kernel_matrix(const ShiftInvariantKernel& kernel, const Eigen::MatrixBase<DerivedX>& X,
                              const Eigen::MatrixBase<DerivedY>& Y) {
  detail::require(X.cols() == kernel.dim() && Y.cols() == kernel.dim(),
                  "point dimension does not match kernel dimension");
  Eigen::MatrixXd K(X.rows(), Y.rows());
  for (Eigen::Index j = 0; j < Y.rows(); ++j)
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      K(i, j) = kernel.from_sq_norm((X.row(i) - Y.row(j)).squaredNorm());
  return K;
}

/// f(x_i, y_j) = s(x_i, y_j) - k(x_i, y_j).
template <typename DerivedX, typename DerivedY>
Eigen::MatrixXd error_matrix(const ShiftInvariantKernel& kernel, const EmbeddedSet& zx,
                             const EmbeddedSet& zy, const Eigen::MatrixBase<DerivedX>& X,
                             const Eigen::MatrixBase<DerivedY>& Y) {
  detail::require(zx.point_count() == X.rows() && zy.point_count() == Y.rows(),
                  "embedded sets do not match the point sets");
  return reconstruct(zx, zy) - kernel_matrix(kernel, X, Y);
}

// Binary format: five little-endian uint64 header words
//   magic, variant (0 tilde / 1 breve), D, n, seed
// followed by D*n little-endian float64 values in column order.
inline constexpr std::uint64_t kEmbeddingMagic = 0x3130424D45464652ULL;  // "RFFEMB01"

namespace detail {

inline void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  os.write(bytes.data(), 8);
}

inline std::uint64_t get_u64(std::istream& is) {
  std::array<unsigned char, 8> bytes{};
  is.read(reinterpret_cast<char*>(bytes.data()), 8);
  if (!is) throw InputError("truncated embedding file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace detail

inline void write_embedding(std::ostream& os, const EmbeddedSet& set) {
  detail::put_u64(os, kEmbeddingMagic);
  detail::put_u64(os, set.config.variant == Variant::Tilde ? 0 : 1);
  detail::put_u64(os, static_cast<std::uint64_t>(set.dim()));
  detail::put_u64(os, static_cast<std::uint64_t>(set.point_count()));
  detail::put_u64(os, set.config.seed);
  const double* data = set.features.data();
  for (Eigen::Index i = 0; i < set.features.size(); ++i) detail::put_u64(os, std::bit_cast<std::uint64_t>(data[i]));
}

/// Reads an embedding written by write_embedding. The kernel id is not part
/// of the format and comes back empty.
inline EmbeddedSet read_embedding(std::istream& is) {
  if (detail::get_u64(is) != kEmbeddingMagic) throw InputError("not an embedding file (bad magic)");
  const std::uint64_t variant = detail::get_u64(is);
  if (variant > 1) throw InputError("embedding file has unknown variant code");
  const auto dim = static_cast<Eigen::Index>(detail::get_u64(is));
  const auto n = static_cast<Eigen::Index>(detail::get_u64(is));
  const std::uint64_t seed = detail::get_u64(is);
  EmbeddedSet set{Eigen::MatrixXd(dim, n), FeatureConfig{variant == 0 ? Variant::Tilde : Variant::Breve, dim, {}, seed}};
  validate_dimension(set.config.variant, dim);
  double* data = set.features.data();
  for (Eigen::Index i = 0; i < set.features.size(); ++i) data[i] = std::bit_cast<double>(detail::get_u64(is));
  return set;
}

}  // namespace rfflab
