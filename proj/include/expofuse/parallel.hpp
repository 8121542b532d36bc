#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <thread>
#include <vector>

namespace expofuse {

/// Number of worker threads used by the row-parallel kernels. Defaults to
/// the EXPOFUSE_THREADS environment variable, else hardware concurrency.
unsigned thread_count();

/// Override the worker count; 0 restores the default.
void set_thread_count(unsigned n);

/// Calls body(begin, end) over disjoint row ranges covering [0, rows).
/// Every row is computed by exactly one call and rows never read each
/// other's outputs, so results do not depend on the split.
template <typename Body>
void parallel_rows(Eigen::Index rows, Body&& body)
{
  const auto workers = static_cast<Eigen::Index>(
    std::min<Eigen::Index>(thread_count(), std::max<Eigen::Index>(rows / 16, 1)));
  if (workers <= 1) {
    body(Eigen::Index{0}, rows);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  const Eigen::Index chunk = (rows + workers - 1) / workers;
  for (Eigen::Index w = 1; w < workers; ++w) {
    const Eigen::Index begin = w * chunk;
    const Eigen::Index end = std::min(rows, begin + chunk);
    if (begin < end)
      pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  body(Eigen::Index{0}, std::min(rows, chunk));
}

} // namespace expofuse
