// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kreiss
{

/// Number of workers to use when the caller passes 0.
inline unsigned default_workers()
{
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Each index is
/// visited exactly once, so callers that write result[i] get the same output
/// for any worker count. The first exception thrown by fn is rethrown here.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn &&fn)
{
  if (workers == 0)
    workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&]
  {
    for (std::size_t i = next++; i < count; i = next++)
    {
      try
      {
        fn(i);
      }
      catch (...)
      {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next = count;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w)
    pool.emplace_back(work);
  work();
  pool.clear();
  if (error)
    std::rethrow_exception(error);
}

}  // namespace kreiss
