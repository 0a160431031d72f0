#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace railfares {

/// Computes `compute(state, i)` for i in [0, count) on `jobs` threads and
/// hands results to `sink(i, result)` on the calling thread in ascending i.
/// Each worker owns one `make_state()` object. At most 4 * jobs results are
/// buffered, so memory stays bounded whatever `count` is. The first exception
/// from any callback stops the run and is rethrown.
template <typename MakeState, typename Compute, typename Sink>
void ordered_parallel(std::size_t count, unsigned jobs, MakeState make_state,
                      Compute compute, Sink sink) {
  using State = decltype(make_state());
  using Result = decltype(compute(std::declval<State&>(), std::size_t{}));

  if (jobs <= 1 || count <= 1) {
    auto state = make_state();
    for (std::size_t i = 0; i < count; ++i) sink(i, compute(state, i));
    return;
  }

  const std::size_t window = std::size_t{jobs} * 4;
  std::vector<std::optional<Result>> slots(window);
  std::mutex mutex;
  std::condition_variable ready;
  std::condition_variable space;
  std::size_t claimed = 0;
  std::size_t delivered = 0;
  bool stop = false;
  std::exception_ptr error;

  auto fail = [&](std::exception_ptr e) {
    std::lock_guard lock(mutex);
    if (!error) error = e;
    stop = true;
    ready.notify_all();
    space.notify_all();
  };

  auto worker = [&] {
    try {
      auto state = make_state();
      while (true) {
        std::size_t i;
        {
          std::unique_lock lock(mutex);
          space.wait(lock, [&] {
            return stop || claimed >= count || claimed < delivered + window;
          });
          if (stop || claimed >= count) return;
          i = claimed++;
        }
        auto result = compute(state, i);
        std::lock_guard lock(mutex);
        slots[i % window].emplace(std::move(result));
        ready.notify_all();
      }
    } catch (...) {
      fail(std::current_exception());
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);

  try {
    for (std::size_t i = 0; i < count; ++i) {
      std::optional<Result> result;
      {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return stop || slots[i % window].has_value(); });
        if (stop) break;
        result.swap(slots[i % window]);
        ++delivered;
        space.notify_all();
      }
      sink(i, std::move(*result));
    }
  } catch (...) {
    fail(std::current_exception());
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace railfares
