#include "ratecast/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "ratecast/errors.hpp"

namespace ratecast {

namespace {

std::size_t initial_thread_count() {
  if (const char* env = std::getenv("RATECAST_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1) {
      return static_cast<std::size_t>(value);
    }
  }
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware >= 1 ? hardware : 1;
}

std::atomic<std::size_t>& pool_size() {
  static std::atomic<std::size_t> size{initial_thread_count()};
  return size;
}

}  // namespace

std::size_t thread_count() { return pool_size().load(); }

void set_thread_count(std::size_t n) {
  if (n < 1) {
    throw DomainError("worker pool needs at least one thread");
  }
  pool_size().store(n);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) {
      fn(k);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) {
        return;
      }
      try {
        fn(k);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) {
    threads.emplace_back(work);
  }
  work();
  for (std::thread& thread : threads) {
    thread.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace ratecast
