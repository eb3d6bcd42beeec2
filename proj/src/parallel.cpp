#include "specshare/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string_view>
#include <thread>
#include <vector>

namespace specshare
{

std::size_t worker_count()
{
  if (const char* env = std::getenv("SPECSHARE_THREADS"))
  {
    const std::string_view s(env);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && n > 0)
      return n;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
  if (n == 0)
    return;
  const std::size_t workers = std::min(n, worker_count());
  if (workers == 1)
  {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex m;
  std::size_t failed_index = n;
  std::exception_ptr failure;

  auto work = [&] {
    for (;;)
    {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || stop.load())
        return;
      try
      {
        body(i);
      }
      catch (...)
      {
        std::lock_guard lock(m);
        if (i < failed_index)
        {
          failed_index = i;
          failure = std::current_exception();
        }
        stop.store(true);
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t)
    pool.emplace_back(work);
  work();
  for (auto& th : pool)
    th.join();
  if (failure)
    std::rethrow_exception(failure);
}

}  // namespace specshare
