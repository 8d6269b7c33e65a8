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

// Shift-invariant kernels k(x, y) = k(x - y) with k(0) = 1, their spectral
// laws, and the kernel-level scalars that feed the error bounds.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "rfflab/errors.hpp"
#include "rfflab/rng.hpp"

namespace rfflab {

enum class KernelFamily { Gaussian };

/// A radial shift-invariant kernel on R^d. Only the Gaussian ships; new
/// families add a case to each `switch` below (eval, sampler, sigma_p, L).
class ShiftInvariantKernel {
 public:
  static ShiftInvariantKernel gaussian(double bandwidth, int dim) {
    detail::require(bandwidth > 0.0 && std::isfinite(bandwidth), "kernel bandwidth must be positive");
    detail::require(dim >= 1, "kernel dimension must be >= 1");
    return ShiftInvariantKernel(KernelFamily::Gaussian, bandwidth, dim);
  }

  KernelFamily family() const { return family_; }
  double bandwidth() const { return bandwidth_; }
  int dim() const { return dim_; }

  /// k as a function of ||delta||.
  double radial(double norm) const { return from_sq_norm(norm * norm); }

  double from_sq_norm(double sq_norm) const {
    switch (family_) {
      case KernelFamily::Gaussian:
        return std::exp(-sq_norm / (2.0 * bandwidth_ * bandwidth_));
    }
    throw NotImplementedError("unknown kernel family");
  }

  /// Product kernels factor as k(delta) = prod_j factor(delta_j); quadrature
  /// over boxes uses this to avoid a full 2d-dimensional grid.
  bool separable() const { return family_ == KernelFamily::Gaussian; }

  double factor(double delta_j) const {
    switch (family_) {
      case KernelFamily::Gaussian:
        return std::exp(-delta_j * delta_j / (2.0 * bandwidth_ * bandwidth_));
    }
    throw NotImplementedError("kernel family is not separable");
  }

  std::string id() const {
    std::ostringstream os;
    os.precision(17);
    os << "gaussian(sigma=" << bandwidth_ << ",d=" << dim_ << ")";
    return os.str();
  }

  friend bool operator==(const ShiftInvariantKernel&, const ShiftInvariantKernel&) = default;

 private:
  ShiftInvariantKernel(KernelFamily family, double bandwidth, int dim)
      : family_(family), bandwidth_(bandwidth), dim_(dim) {}

  KernelFamily family_;
  double bandwidth_;
  int dim_;
};

/// Frequencies omega_i ~ P(omega), one per row, plus the phases b_i of the
/// phase-shifted embedding when requested.
struct SpectralDraw {
  Eigen::MatrixXd omegas;
  std::optional<Eigen::VectorXd> phases;
  std::uint64_t seed = 0;
  std::string kernel_id;

  Eigen::Index count() const { return omegas.rows(); }
  bool has_phases() const { return phases.has_value(); }
};

template <typename Derived>
double kernel_eval(const ShiftInvariantKernel& kernel, const Eigen::MatrixBase<Derived>& delta) {
  detail::require(delta.size() == kernel.dim(), "delta length does not match kernel dimension");
  return kernel.from_sq_norm(delta.squaredNorm());
}

/// Draws `count` frequencies, then (if requested) `count` phases, from a
/// stream seeded with `seed`. Frequencies are filled row by row.
inline SpectralDraw sample_spectral(const ShiftInvariantKernel& kernel, Eigen::Index count,
                                    bool with_phases, std::uint64_t seed) {
  detail::require(count >= 1, "spectral draw needs at least one frequency");
  RandomStream rng(seed);
  SpectralDraw draw;
  draw.seed = seed;
  draw.kernel_id = kernel.id();
  draw.omegas.resize(count, kernel.dim());
  switch (kernel.family()) {
    case KernelFamily::Gaussian: {
      const double scale = 1.0 / kernel.bandwidth();
      for (Eigen::Index i = 0; i < count; ++i)
        for (Eigen::Index j = 0; j < kernel.dim(); ++j) draw.omegas(i, j) = scale * rng.normal();
      break;
    }
  }
  if (with_phases) {
    Eigen::VectorXd phases(count);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (Eigen::Index i = 0; i < count; ++i) {
      const double b = two_pi * rng.uniform();
      phases(i) = b < two_pi ? b : 0.0;
    }
    draw.phases = std::move(phases);
  }
  return draw;
}

/// sqrt(E ||omega||^2).
inline double sigma_p(const ShiftInvariantKernel& kernel) {
  switch (kernel.family()) {
    case KernelFamily::Gaussian:
      return std::sqrt(static_cast<double>(kernel.dim())) / kernel.bandwidth();
  }
  throw NotImplementedError("sigma_p not available for this kernel family");
}

/// Lipschitz constant of k(delta) as a function of delta.
inline double lipschitz_const(const ShiftInvariantKernel& kernel) {
  switch (kernel.family()) {
    case KernelFamily::Gaussian:
      return 1.0 / (kernel.bandwidth() * std::sqrt(std::numbers::e));
  }
  throw NotImplementedError("Lipschitz constant not available for this kernel family");
}

inline constexpr int kDefaultSupGridResolution = 10001;

namespace detail {

// sup over ||delta|| in [0, radius] of g(k(delta), k(2 delta)) on a uniform grid.
template <typename F>
double radial_grid_sup(const ShiftInvariantKernel& kernel, double radius, int resolution, F&& g) {
  require(resolution >= 2, "grid resolution must be >= 2");
  require(radius >= 0.0 && std::isfinite(radius), "domain radius must be finite and >= 0");
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < resolution; ++i) {
    const double r = radius * static_cast<double>(i) / static_cast<double>(resolution - 1);
    best = std::max(best, g(kernel.radial(r), kernel.radial(2.0 * r)));
  }
  return best;
}

}  // namespace detail

/// sup over the difference domain of 1 + k(2 delta) - 2 k(delta)^2. Not
/// floored at 1: on a bounded domain the Gaussian value is below 1.
inline double wimpy_variance_sup(const ShiftInvariantKernel& kernel, double domain_radius,
                                 int grid_resolution = kDefaultSupGridResolution) {
  return detail::radial_grid_sup(kernel, domain_radius, grid_resolution,
                                 [](double k1, double k2) { return 1.0 + k2 - 2.0 * k1 * k1; });
}

}  // namespace rfflab
