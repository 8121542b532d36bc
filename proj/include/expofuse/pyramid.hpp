#pragma once

#include "expofuse/errors.hpp"
#include "expofuse/image.hpp"
#include "expofuse/parallel.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace expofuse {

/// Burt-Adelson generating kernel [1/4 - a/2, 1/4, a, 1/4, 1/4 - a/2].
template <typename Scalar>
constexpr std::array<Scalar, 5> generating_kernel(Scalar a = Scalar(0.4))
{
  const Scalar edge = Scalar(0.25) - a / Scalar(2);
  return {edge, Scalar(0.25), a, Scalar(0.25), edge};
}

/// Mirrors an index into [0, n) without repeating the edge sample
/// ("abc|ba"). A single-sample axis maps everything to 0.
inline Eigen::Index reflect_index(Eigen::Index i, Eigen::Index n)
{
  if (n == 1)
    return 0;
  const Eigen::Index period = 2 * (n - 1);
  i %= period;
  if (i < 0)
    i += period;
  return i < n ? i : period - i;
}

/// Smallest planes the pyramid analysis will produce on either axis.
inline constexpr Eigen::Index min_level_dimension = 4;

inline Eigen::Index reduced_size(Eigen::Index n) { return (n + 1) / 2; }

/// Largest depth whose coarsest level keeps both dimensions >= 4; 0 when
/// no depth is admissible.
inline int max_depth(Eigen::Index width, Eigen::Index height)
{
  int d = 0;
  while (reduced_size(width) >= min_level_dimension &&
         reduced_size(height) >= min_level_dimension) {
    width = reduced_size(width);
    height = reduced_size(height);
    ++d;
  }
  return d;
}

/// max(1, floor(log2(min(w, h))) - 3), capped by max_depth. Throws when
/// the image is too small for any pyramid.
inline int default_depth(Eigen::Index width, Eigen::Index height)
{
  const int cap = max_depth(width, height);
  if (cap < 1)
    throw ConfigError("image " + std::to_string(width) + "x" + std::to_string(height) +
                      " is too small for a pyramid (coarsest level must be at least 4x4)");
  const auto shortest = static_cast<double>(std::min(width, height));
  const int guess = std::max(1, static_cast<int>(std::floor(std::log2(shortest))) - 3);
  return std::min(guess, cap);
}

/// Low-pass with the 5-tap kernel on both axes (mirrored borders) and keep
/// even samples. Output is ceil(w/2) x ceil(h/2).
template <typename Derived>
Plane<typename Derived::Scalar> reduce(const Eigen::ArrayBase<Derived>& input)
{
  using Scalar = typename Derived::Scalar;
  const Plane<Scalar> in = input;
  const Eigen::Index rows = in.rows();
  const Eigen::Index cols = in.cols();
  if (rows < 1 || cols < 1 || (rows < 2 && cols < 2))
    throw DimensionError("reduce needs a plane with at least two samples along some axis, got " +
                         std::to_string(cols) + "x" + std::to_string(rows));
  constexpr auto w = generating_kernel<Scalar>();
  const Eigen::Index out_rows = reduced_size(rows);
  const Eigen::Index out_cols = reduced_size(cols);

  Plane<Scalar> horizontal(rows, out_cols);
  parallel_rows(rows, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < out_cols; ++j) {
        Scalar acc(0);
        for (int m = -2; m <= 2; ++m)
          acc += w[m + 2] * in(i, reflect_index(2 * j + m, cols));
        horizontal(i, j) = acc;
      }
    }
  });

  Plane<Scalar> out(out_rows, out_cols);
  parallel_rows(out_rows, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < out_cols; ++j) {
        Scalar acc(0);
        for (int m = -2; m <= 2; ++m)
          acc += w[m + 2] * horizontal(reflect_index(2 * i + m, rows), j);
        out(i, j) = acc;
      }
    }
  });
  return out;
}

/// Zero-insert upsample to target_width x target_height and filter with
/// twice the generating kernel per axis, mirroring the upsampled grid.
template <typename Derived>
Plane<typename Derived::Scalar> expand(const Eigen::ArrayBase<Derived>& input,
                                       Eigen::Index target_width, Eigen::Index target_height)
{
  using Scalar = typename Derived::Scalar;
  const Plane<Scalar> in = input;
  if (target_width < 1 || target_height < 1 || reduced_size(target_width) != in.cols() ||
      reduced_size(target_height) != in.rows())
    throw DimensionError("cannot expand " + std::to_string(in.cols()) + "x" +
                         std::to_string(in.rows()) + " to " + std::to_string(target_width) + "x" +
                         std::to_string(target_height));
  constexpr auto w = generating_kernel<Scalar>();

  // Odd positions of the upsampled grid are zero; mirroring about integer
  // points preserves parity, so only even taps ever contribute. A length-1
  // axis has nothing to interpolate and is copied.
  Plane<Scalar> horizontal(in.rows(), target_width);
  parallel_rows(in.rows(), [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < target_width; ++j) {
        if (target_width == 1) {
          horizontal(i, j) = in(i, 0);
          continue;
        }
        Scalar acc(0);
        for (int m = -2; m <= 2; ++m) {
          const Eigen::Index src = reflect_index(j + m, target_width);
          if (src % 2 == 0)
            acc += w[m + 2] * in(i, src / 2);
        }
        horizontal(i, j) = Scalar(2) * acc;
      }
    }
  });

  Plane<Scalar> out(target_height, target_width);
  parallel_rows(target_height, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < target_width; ++j) {
        if (target_height == 1) {
          out(i, j) = horizontal(0, j);
          continue;
        }
        Scalar acc(0);
        for (int m = -2; m <= 2; ++m) {
          const Eigen::Index src = reflect_index(i + m, target_height);
          if (src % 2 == 0)
            acc += w[m + 2] * horizontal(src / 2, j);
        }
        out(i, j) = Scalar(2) * acc;
      }
    }
  });
  return out;
}

enum class PyramidKind
{
  Gaussian,
  Laplacian
};

/// levels[0] is full resolution; levels.back() is the coarsest. Each level
/// records its own dimensions, which synthesis uses for odd sizes.
template <typename Scalar>
struct Pyramid
{
  PyramidKind kind = PyramidKind::Gaussian;
  std::vector<Plane<Scalar>> levels;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
};

namespace detail {

inline void check_depth(Eigen::Index width, Eigen::Index height, int depth)
{
  if (depth < 1)
    throw ConfigError("pyramid depth must be >= 1, got " + std::to_string(depth));
  const int cap = max_depth(width, height);
  if (depth > cap)
    throw ConfigError("pyramid depth " + std::to_string(depth) + " is too large for " +
                      std::to_string(width) + "x" + std::to_string(height) +
                      " (coarsest level must be at least 4x4; maximum depth " +
                      std::to_string(cap) + ")");
}

} // namespace detail

template <typename Derived>
Pyramid<typename Derived::Scalar> analyze_gaussian(const Eigen::ArrayBase<Derived>& input, int depth)
{
  using Scalar = typename Derived::Scalar;
  detail::check_depth(input.cols(), input.rows(), depth);
  Pyramid<Scalar> pyr;
  pyr.kind = PyramidKind::Gaussian;
  pyr.levels.reserve(static_cast<std::size_t>(depth) + 1);
  pyr.levels.emplace_back(input);
  for (int l = 1; l <= depth; ++l)
    pyr.levels.push_back(reduce(pyr.levels.back()));
  return pyr;
}

/// Band-pass levels G[l] - expand(G[l+1]) with the Gaussian top kept as the
/// last level.
template <typename Derived>
Pyramid<typename Derived::Scalar> analyze_laplacian(const Eigen::ArrayBase<Derived>& input,
                                                    int depth)
{
  auto pyr = analyze_gaussian(input, depth);
  for (int l = 0; l < depth; ++l) {
    auto& level = pyr.levels[static_cast<std::size_t>(l)];
    level -= expand(pyr.levels[static_cast<std::size_t>(l) + 1], level.cols(), level.rows());
  }
  pyr.kind = PyramidKind::Laplacian;
  return pyr;
}

template <typename Scalar>
Plane<Scalar> collapse(const Pyramid<Scalar>& pyr)
{
  if (pyr.kind != PyramidKind::Laplacian)
    throw ConfigError("collapse requires a Laplacian pyramid");
  if (pyr.levels.empty())
    throw DimensionError("collapse of an empty pyramid");
  Plane<Scalar> acc = pyr.levels.back();
  for (int l = pyr.depth() - 1; l >= 0; --l) {
    const auto& level = pyr.levels[static_cast<std::size_t>(l)];
    acc = level + expand(acc, level.cols(), level.rows());
  }
  return acc;
}

} // namespace expofuse
