#pragma once

#include "expofuse/errors.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace expofuse {

/// A 2-D grid of intensities. Rows are image rows (height), columns are
/// image columns (width), stored row-major.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using PlaneF = Plane<float>;
using PlaneD = Plane<double>;

/// One (gray) or three (RGB) co-registered planes of equal size.
template <typename Scalar>
class Image
{
public:
  using PlaneType = Plane<Scalar>;

  Image() = default;

  explicit Image(std::vector<PlaneType> channels)
    : channels_(std::move(channels))
  {
    if (channels_.size() != 1 && channels_.size() != 3)
      throw DimensionError("image must have 1 or 3 channels, got " +
                           std::to_string(channels_.size()));
    for (const auto& c : channels_) {
      if (c.rows() < 1 || c.cols() < 1)
        throw DimensionError("image planes must be at least 1x1");
      if (c.rows() != channels_.front().rows() || c.cols() != channels_.front().cols())
        throw DimensionError("image channels differ in size");
    }
  }

  explicit Image(PlaneType gray)
    : Image(std::vector<PlaneType>{std::move(gray)})
  {
  }

  Eigen::Index width() const { return channels_.empty() ? 0 : channels_.front().cols(); }
  Eigen::Index height() const { return channels_.empty() ? 0 : channels_.front().rows(); }
  std::size_t channel_count() const { return channels_.size(); }
  bool empty() const { return channels_.empty(); }

  const PlaneType& channel(std::size_t c) const { return channels_.at(c); }
  const std::vector<PlaneType>& channels() const { return channels_; }

  bool same_shape(const Image& other) const
  {
    return width() == other.width() && height() == other.height() &&
           channel_count() == other.channel_count();
  }

  template <typename Other>
  Image<Other> cast() const
  {
    std::vector<Plane<Other>> out;
    out.reserve(channels_.size());
    for (const auto& c : channels_)
      out.push_back(c.template cast<Other>());
    return Image<Other>(std::move(out));
  }

private:
  std::vector<PlaneType> channels_;
};

using ImageF = Image<float>;
using ImageD = Image<double>;

/// The bracketed input series, darkest to brightest by convention (order is
/// not significant to fusion).
template <typename Scalar>
using ExposureStack = std::vector<Image<Scalar>>;

/// Throws DimensionError naming the first member whose shape differs from
/// the first image.
template <typename Scalar>
void check_stack(const ExposureStack<Scalar>& stack)
{
  if (stack.empty())
    throw DimensionError("exposure stack is empty");
  for (std::size_t k = 1; k < stack.size(); ++k) {
    if (!stack[k].same_shape(stack.front()))
      throw DimensionError("exposure " + std::to_string(k) + " is " +
                           std::to_string(stack[k].width()) + "x" +
                           std::to_string(stack[k].height()) + "x" +
                           std::to_string(stack[k].channel_count()) + ", expected " +
                           std::to_string(stack.front().width()) + "x" +
                           std::to_string(stack.front().height()) + "x" +
                           std::to_string(stack.front().channel_count()));
  }
}

/// BT.601 luma. Gray images are returned unchanged.
template <typename Scalar>
Plane<Scalar> to_luminance(const Image<Scalar>& image)
{
  if (image.channel_count() == 1)
    return image.channel(0);
  return Scalar(0.299) * image.channel(0) + Scalar(0.587) * image.channel(1) +
         Scalar(0.114) * image.channel(2);
}

} // namespace expofuse
