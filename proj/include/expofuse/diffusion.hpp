#pragma once

#include "expofuse/errors.hpp"
#include "expofuse/image.hpp"
#include "expofuse/parallel.hpp"

#include <cmath>
#include <string>

namespace expofuse {

/// Perona-Malik edge-stopping functions.
enum class Conduction
{
  G1, ///< exp(-(x/kappa)^2), favours high-contrast edges
  G2  ///< 1 / (1 + (x/kappa)^2), favours wide regions
};

template <typename Scalar>
struct DiffusionParams
{
  int iterations = 1;
  Scalar lambda = Scalar(1) / Scalar(7);
  /// Gradient scale on the internal [0,1] intensity scale (30 on 0-255).
  Scalar kappa = Scalar(30) / Scalar(255);
  Conduction variant = Conduction::G1;

  void validate() const
  {
    if (iterations < 0)
      throw ConfigError("diffusion iterations must be >= 0, got " + std::to_string(iterations));
    if (!(lambda > Scalar(0) && lambda <= Scalar(1)))
      throw ConfigError("diffusion lambda must lie in (0, 1], got " + std::to_string(lambda));
    if (!(kappa > Scalar(0)) || !std::isfinite(kappa))
      throw ConfigError("diffusion kappa must be positive, got " + std::to_string(kappa));
  }
};

/// Conduction coefficient for a gradient magnitude; 1 at zero, strictly
/// decreasing.
template <typename Scalar>
Scalar conduction(Scalar grad_mag, Scalar kappa, Conduction variant)
{
  const Scalar r = grad_mag / kappa;
  if (variant == Conduction::G1)
    return std::exp(-r * r);
  return Scalar(1) / (Scalar(1) + r * r);
}

/// One explicit (Jacobi) diffusion step over the 4-neighbourhood. All
/// differences are taken on the input; neighbours outside the plane
/// contribute no flux while the divisor stays 4.
template <typename Derived>
Plane<typename Derived::Scalar> diffuse_step(const Eigen::ArrayBase<Derived>& input,
                                             typename Derived::Scalar lambda,
                                             typename Derived::Scalar kappa,
                                             Conduction variant)
{
  using Scalar = typename Derived::Scalar;
  const Plane<Scalar> in = input;
  Plane<Scalar> out(in.rows(), in.cols());
  const Eigen::Index rows = in.rows();
  const Eigen::Index cols = in.cols();
  const Scalar rate = lambda / Scalar(4);

  auto flux = [&](Scalar diff) { return conduction(std::abs(diff), kappa, variant) * diff; };

  parallel_rows(rows, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        const Scalar centre = in(i, j);
        Scalar sum(0);
        if (i > 0)
          sum += flux(in(i - 1, j) - centre);
        if (i + 1 < rows)
          sum += flux(in(i + 1, j) - centre);
        if (j + 1 < cols)
          sum += flux(in(i, j + 1) - centre);
        if (j > 0)
          sum += flux(in(i, j - 1) - centre);
        out(i, j) = centre + rate * sum;
      }
    }
  });
  return out;
}

/// Applies diffuse_step params.iterations times.
template <typename Derived>
Plane<typename Derived::Scalar>
diffuse(const Eigen::ArrayBase<Derived>& input,
        const DiffusionParams<typename Derived::Scalar>& params)
{
  params.validate();
  Plane<typename Derived::Scalar> current = input;
  for (int t = 0; t < params.iterations; ++t)
    current = diffuse_step(current, params.lambda, params.kappa, params.variant);
  return current;
}

/// Base (diffused) and detail (residual) layers of one plane.
template <typename Scalar>
struct TwoLayer
{
  Plane<Scalar> base;
  Plane<Scalar> detail;
};

template <typename Derived>
TwoLayer<typename Derived::Scalar>
decompose(const Eigen::ArrayBase<Derived>& input,
          const DiffusionParams<typename Derived::Scalar>& params)
{
  using Scalar = typename Derived::Scalar;
  const Plane<Scalar> plane = input;
  TwoLayer<Scalar> layers;
  layers.base = diffuse(plane, params);
  layers.detail = plane - layers.base;
  return layers;
}

} // namespace expofuse
