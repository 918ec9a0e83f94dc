#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace quadrep {

inline unsigned default_workers() noexcept {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs produce(i) for i in [0, count) on up to `workers` threads and hands
// each result to consume(i, result) on the calling thread in ascending i.
// At most `window` results are buffered ahead of the consumer. consume() may
// return false to stop early; tasks not yet started are then skipped.
// The first exception thrown by either callback is rethrown after all
// workers have joined.
template <class Produce, class Consume>
void ordered_parallel_for(std::size_t count, unsigned workers, Produce&& produce,
                          Consume&& consume) {
  using Result = decltype(produce(std::size_t{0}));
  if (count == 0) return;
  workers = std::max(1u, workers);
  if (workers == 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      if (!consume(i, produce(i))) return;
    }
    return;
  }

  const std::size_t window = std::max<std::size_t>(2 * workers, 4);
  std::vector<std::optional<Result>> slots(window);
  std::mutex mu;
  std::condition_variable cv;
  std::size_t next_task = 0;
  std::size_t next_consume = 0;
  bool stop = false;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return stop || next_task >= count || next_task < next_consume + window; });
        if (stop || next_task >= count) return;
        i = next_task++;
      }
      try {
        Result r = produce(i);
        std::lock_guard lock(mu);
        slots[i % window].emplace(std::move(r));
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);

  while (true) {
    std::optional<Result> ready;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return stop || slots[next_consume % window].has_value(); });
      if (stop) break;
      ready = std::move(slots[next_consume % window]);
      slots[next_consume % window].reset();
    }
    bool keep_going = true;
    try {
      keep_going = consume(next_consume, std::move(*ready));
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      keep_going = false;
    }
    {
      std::lock_guard lock(mu);
      ++next_consume;
      if (!keep_going || next_consume >= count) stop = true;
    }
    cv.notify_all();
    if (!keep_going || next_consume >= count) break;
  }

  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Unordered variant for tasks with no result; blocks until every task ran.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task) {
  workers = std::max(1u, workers);
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace quadrep
