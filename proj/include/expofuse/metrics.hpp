#pragma once

#include "expofuse/fusion.hpp"
#include "expofuse/image.hpp"

#include <optional>
#include <string>

namespace expofuse {

struct MetricReport
{
  std::optional<double> entropy_bits;
  std::optional<double> relative_mse_pct;
  std::optional<double> elapsed_ms;

  /// "entropy_bits,relative_mse_pct,elapsed_ms" values, absent fields empty.
  std::string csv() const;
};

/// Shannon entropy in bits of the 256-bin histogram of the quantized
/// luminance.
double entropy(const ImageD& image);

/// 100 * mean((test - ref)^2) / mean(ref^2) over all samples. An all-zero
/// reference yields 0 when test is also all-zero and throws otherwise.
double relative_mse(const ImageD& test, const ImageD& reference);

/// Wall-clock milliseconds of one fuse_exposures call (steady clock).
double time_fusion(const ExposureStack<double>& stack, const FusionConfig<double>& config);

/// Median of `runs` time_fusion measurements.
double median_time_fusion(const ExposureStack<double>& stack, const FusionConfig<double>& config,
                          int runs = 5);

} // namespace expofuse
