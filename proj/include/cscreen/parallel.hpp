#ifndef CSCREEN_PARALLEL_HPP
#define CSCREEN_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace cscreen {

/// Evaluates fn(0), ..., fn(count - 1) on up to `threads` workers and returns
/// the results in index order. Work is claimed dynamically; the output does
/// not depend on the schedule. The first exception thrown is rethrown after
/// all workers stop.
template <class Fn>
auto parallel_map(std::size_t count, std::size_t threads, Fn &&fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(count);
  threads = std::max<std::size_t>(1, std::min(threads, count));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<T> out;
  out.reserve(count);
  for (auto &s : slots) out.push_back(std::move(*s));
  return out;
}

/// Hardware concurrency with a floor of one.
inline std::size_t default_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace cscreen

#endif
