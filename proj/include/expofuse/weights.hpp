#pragma once

#include "expofuse/errors.hpp"
#include "expofuse/image.hpp"
#include "expofuse/parallel.hpp"
#include "expofuse/pyramid.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace expofuse {

/// Per-exposure weight maps; at every pixel the maps sum to one.
template <typename Scalar>
struct WeightStack
{
  std::vector<Plane<Scalar>> maps;
};

/// Max minus min over the eight neighbours of each pixel (centre excluded),
/// with replicated borders.
template <typename Derived>
Plane<typename Derived::Scalar> local_range(const Eigen::ArrayBase<Derived>& input)
{
  using Scalar = typename Derived::Scalar;
  const Plane<Scalar> in = input;
  const Eigen::Index rows = in.rows();
  const Eigen::Index cols = in.cols();
  Plane<Scalar> out(rows, cols);
  parallel_rows(rows, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        Scalar lo = std::numeric_limits<Scalar>::max();
        Scalar hi = std::numeric_limits<Scalar>::lowest();
        for (Eigen::Index di = -1; di <= 1; ++di) {
          for (Eigen::Index dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0)
              continue;
            const Scalar v = in(std::clamp<Eigen::Index>(i + di, 0, rows - 1),
                                std::clamp<Eigen::Index>(j + dj, 0, cols - 1));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
        }
        out(i, j) = hi - lo;
      }
    }
  });
  return out;
}

/// Below this per-pixel total, weights fall back to uniform 1/N.
template <typename Scalar>
inline constexpr Scalar zero_sum_epsilon = Scalar(1e-12);

template <typename Scalar>
WeightStack<Scalar> normalize_weights(const std::vector<Plane<Scalar>>& raw)
{
  if (raw.empty())
    throw DimensionError("normalize_weights needs at least one map");
  const Eigen::Index rows = raw.front().rows();
  const Eigen::Index cols = raw.front().cols();
  for (const auto& r : raw) {
    if (r.rows() != rows || r.cols() != cols)
      throw DimensionError("weight maps differ in size");
  }

  Plane<Scalar> total = Plane<Scalar>::Zero(rows, cols);
  for (const auto& r : raw)
    total += r;
  const auto flat = (total < zero_sum_epsilon<Scalar>).eval();
  const Scalar uniform = Scalar(1) / static_cast<Scalar>(raw.size());

  WeightStack<Scalar> stack;
  stack.maps.reserve(raw.size());
  for (const auto& r : raw)
    stack.maps.push_back(flat.select(Plane<Scalar>::Constant(rows, cols, uniform), r / total));
  return stack;
}

template <typename Scalar>
std::vector<Pyramid<Scalar>> weight_pyramids(const WeightStack<Scalar>& weights, int depth)
{
  std::vector<Pyramid<Scalar>> pyramids;
  pyramids.reserve(weights.maps.size());
  for (const auto& map : weights.maps)
    pyramids.push_back(analyze_gaussian(map, depth));
  return pyramids;
}

} // namespace expofuse
