#pragma once

#include "expofuse/diffusion.hpp"
#include "expofuse/errors.hpp"
#include "expofuse/image.hpp"
#include "expofuse/pyramid.hpp"
#include "expofuse/weights.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace expofuse {

enum class DetailMode
{
  UserDriven, ///< linear gain alpha1 on the mean detail
  Sigmoid     ///< zero-centred sigmoid remap, gain alpha2
};

template <typename Scalar>
struct FusionConfig
{
  DiffusionParams<Scalar> diffusion;
  /// Pyramid depth; empty selects default_depth for the image size.
  std::optional<int> depth;
  DetailMode detail_mode = DetailMode::Sigmoid;
  Scalar alpha1 = Scalar(1.2);
  Scalar alpha2 = Scalar(2);
  Scalar sigmoid_weight = Scalar(27);
  Scalar sigmoid_threshold = Scalar(0.002);

  void validate() const
  {
    diffusion.validate();
    if (depth && *depth < 1)
      throw ConfigError("pyramid depth must be >= 1, got " + std::to_string(*depth));
    if (!(alpha1 > Scalar(0)))
      throw ConfigError("alpha1 must be positive, got " + std::to_string(alpha1));
    if (!(alpha2 > Scalar(0)))
      throw ConfigError("alpha2 must be positive, got " + std::to_string(alpha2));
    if (!(sigmoid_weight > Scalar(0)))
      throw ConfigError("sigmoid weight a must be positive, got " + std::to_string(sigmoid_weight));
    if (!(sigmoid_threshold >= Scalar(0)))
      throw ConfigError("sigmoid threshold must be >= 0, got " + std::to_string(sigmoid_threshold));
  }
};

template <typename Scalar>
struct FusedResult
{
  /// clamp(fused_base + fused_detail, 0, 1) per channel.
  Image<Scalar> image;
  std::vector<Plane<Scalar>> fused_base;
  std::vector<Plane<Scalar>> fused_detail;

  /// fused_base + fused_detail before the final clamp.
  Image<Scalar> unclamped() const
  {
    std::vector<Plane<Scalar>> planes;
    for (std::size_t c = 0; c < fused_base.size(); ++c)
      planes.push_back(fused_base[c] + fused_detail[c]);
    return Image<Scalar>(std::move(planes));
  }
};

/// S(x) = 1 / (1 + exp(-a x + theta)).
template <typename Scalar>
Scalar sigmoid(Scalar x, Scalar a, Scalar theta)
{
  return Scalar(1) / (Scalar(1) + std::exp(-a * x + theta));
}

/// S'(x) = a S(x) (1 - S(x)); peaks at a/4.
template <typename Scalar>
Scalar sigmoid_deriv(Scalar x, Scalar a, Scalar theta)
{
  const Scalar s = sigmoid(x, a, theta);
  return a * s * (Scalar(1) - s);
}

/// Blends the Laplacian pyramids of the base layers with the Gaussian
/// weight pyramids, level by level including the top, and collapses.
template <typename Scalar>
Plane<Scalar> fuse_base(const std::vector<Plane<Scalar>>& bases,
                        const std::vector<Pyramid<Scalar>>& weight_pyrs)
{
  if (bases.empty() || bases.size() != weight_pyrs.size())
    throw DimensionError("fuse_base needs one weight pyramid per base layer, got " +
                         std::to_string(bases.size()) + " bases and " +
                         std::to_string(weight_pyrs.size()) + " pyramids");
  const int depth = weight_pyrs.front().depth();
  Pyramid<Scalar> fused;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    const auto& weights = weight_pyrs[k];
    if (weights.depth() != depth || weights.levels.front().rows() != bases[k].rows() ||
        weights.levels.front().cols() != bases[k].cols())
      throw DimensionError("weight pyramid " + std::to_string(k) +
                           " does not match its base layer");
    const auto band = analyze_laplacian(bases[k], depth);
    if (k == 0) {
      fused.kind = PyramidKind::Laplacian;
      for (int l = 0; l <= depth; ++l)
        fused.levels.push_back(band.levels[l] * weights.levels[l]);
    } else {
      for (int l = 0; l <= depth; ++l)
        fused.levels[l] += band.levels[l] * weights.levels[l];
    }
  }
  return collapse(fused);
}

/// D_f = (alpha1 / N) * sum_k D_k.
template <typename Scalar>
Plane<Scalar> fuse_detail_user(const std::vector<Plane<Scalar>>& details, Scalar alpha1)
{
  if (details.empty())
    throw DimensionError("fuse_detail_user needs at least one detail layer");
  Plane<Scalar> sum = details.front();
  for (std::size_t k = 1; k < details.size(); ++k)
    sum += details[k];
  return (alpha1 / static_cast<Scalar>(details.size())) * sum;
}

/// D_f = (alpha2 / N) * sum_k [S(D_k) - S(0)]. Subtracting S(0) maps zero
/// detail to zero so the result can be added to the fused base.
template <typename Scalar>
Plane<Scalar> fuse_detail_sigmoid(const std::vector<Plane<Scalar>>& details, Scalar alpha2,
                                  Scalar a, Scalar theta)
{
  if (details.empty())
    throw DimensionError("fuse_detail_sigmoid needs at least one detail layer");
  const Scalar centre = sigmoid(Scalar(0), a, theta);
  Plane<Scalar> sum = Plane<Scalar>::Zero(details.front().rows(), details.front().cols());
  for (const auto& d : details) {
    if (d.rows() != sum.rows() || d.cols() != sum.cols())
      throw DimensionError("detail layers differ in size");
    sum += d.unaryExpr([&](Scalar x) { return sigmoid(x, a, theta) - centre; });
  }
  return (alpha2 / static_cast<Scalar>(details.size())) * sum;
}

/// Full pipeline: per-channel two-layer decomposition, luminance local-range
/// weights shared by all channels, pyramid blend of the bases, detail
/// fusion, then clamp(B_f + D_f).
template <typename Scalar>
FusedResult<Scalar> fuse_exposures(const ExposureStack<Scalar>& stack,
                                   const FusionConfig<Scalar>& config)
{
  config.validate();
  check_stack(stack);
  const auto& first = stack.front();
  const int depth = config.depth ? *config.depth : default_depth(first.width(), first.height());
  if (depth > max_depth(first.width(), first.height()))
    throw ConfigError("pyramid depth " + std::to_string(depth) + " is too large for " +
                      std::to_string(first.width()) + "x" + std::to_string(first.height()) +
                      " (maximum " + std::to_string(max_depth(first.width(), first.height())) +
                      ")");

  const std::size_t n = stack.size();
  const std::size_t channels = first.channel_count();

  // bases[c][k], details[c][k]
  std::vector<std::vector<Plane<Scalar>>> bases(channels), details(channels);
  std::vector<Plane<Scalar>> ranges;
  ranges.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Plane<Scalar>> exposure_bases;
    for (std::size_t c = 0; c < channels; ++c) {
      auto layers = decompose(stack[k].channel(c), config.diffusion);
      exposure_bases.push_back(layers.base);
      bases[c].push_back(std::move(layers.base));
      details[c].push_back(std::move(layers.detail));
    }
    ranges.push_back(local_range(to_luminance(Image<Scalar>(std::move(exposure_bases)))));
  }

  const auto weights = weight_pyramids(normalize_weights(ranges), depth);

  FusedResult<Scalar> result;
  std::vector<Plane<Scalar>> output;
  for (std::size_t c = 0; c < channels; ++c) {
    result.fused_base.push_back(fuse_base(bases[c], weights));
    if (config.detail_mode == DetailMode::UserDriven)
      result.fused_detail.push_back(fuse_detail_user(details[c], config.alpha1));
    else
      result.fused_detail.push_back(fuse_detail_sigmoid(
        details[c], config.alpha2, config.sigmoid_weight, config.sigmoid_threshold));
    output.push_back(
      (result.fused_base.back() + result.fused_detail.back()).max(Scalar(0)).min(Scalar(1)));
  }
  result.image = Image<Scalar>(std::move(output));
  return result;
}

} // namespace expofuse
