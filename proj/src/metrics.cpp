#include "expofuse/metrics.hpp"

#include "expofuse/pnm.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

namespace expofuse {

namespace {

std::string format_field(const std::optional<double>& v)
{
  if (!v)
    return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

} // namespace

std::string MetricReport::csv() const
{
  return format_field(entropy_bits) + "," + format_field(relative_mse_pct) + "," +
         format_field(elapsed_ms);
}

double entropy(const ImageD& image)
{
  const PlaneD luma = to_luminance(image);
  std::array<std::size_t, 256> histogram{};
  for (Eigen::Index i = 0; i < luma.size(); ++i)
    ++histogram[quantize(luma(i))];
  const auto total = static_cast<double>(luma.size());
  double h = 0.0;
  for (const std::size_t count : histogram) {
    if (count == 0)
      continue;
    const double p = static_cast<double>(count) / total;
    h -= p * std::log2(p);
  }
  // -0.0 for a single bin
  return h == 0.0 ? 0.0 : h;
}

double relative_mse(const ImageD& test, const ImageD& reference)
{
  if (!test.same_shape(reference))
    throw DimensionError("relative_mse: test is " + std::to_string(test.width()) + "x" +
                         std::to_string(test.height()) + "x" +
                         std::to_string(test.channel_count()) + " but reference is " +
                         std::to_string(reference.width()) + "x" +
                         std::to_string(reference.height()) + "x" +
                         std::to_string(reference.channel_count()));
  double diff = 0.0;
  double energy = 0.0;
  for (std::size_t c = 0; c < test.channel_count(); ++c) {
    diff += (test.channel(c) - reference.channel(c)).square().sum();
    energy += reference.channel(c).square().sum();
  }
  if (energy == 0.0) {
    if (diff == 0.0)
      return 0.0;
    throw ConfigError("relative_mse: reference is all zero but test is not");
  }
  // The sample counts cancel between the two means.
  return 100.0 * diff / energy;
}

double time_fusion(const ExposureStack<double>& stack, const FusionConfig<double>& config)
{
  const auto start = std::chrono::steady_clock::now();
  const auto result = fuse_exposures(stack, config);
  const auto stop = std::chrono::steady_clock::now();
  (void)result;
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

double median_time_fusion(const ExposureStack<double>& stack, const FusionConfig<double>& config,
                          int runs)
{
  if (runs < 1)
    throw ConfigError("median_time_fusion needs at least one run");
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(runs));
  for (int r = 0; r < runs; ++r)
    times.push_back(time_fusion(stack, config));
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  return times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

} // namespace expofuse
