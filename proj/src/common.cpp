// Copyright 2026 The magiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "magiclab/common.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace magiclab {

unsigned worker_thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("MAGIC_LAB_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0 && static_cast<unsigned>(cap) < n) {
      n = static_cast<unsigned>(cap);
    }
  }
  return n;
}

namespace detail {

void run_chunks(std::size_t n_chunks, unsigned workers,
                const std::function<void(std::size_t)>& chunk_fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) break;
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) break;
      try {
        chunk_fn(c);
      } catch (...) {
        {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (error == nullptr) error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
        break;
      }
    }
  };
  unsigned n_threads = workers;
  if (static_cast<std::size_t>(n_threads) > n_chunks) {
    n_threads = static_cast<unsigned>(n_chunks);
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads - 1);
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();
  if (error != nullptr) std::rethrow_exception(error);
}

}  // namespace detail

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

}  // namespace magiclab
