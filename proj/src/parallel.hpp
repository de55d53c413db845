// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_SRC_PARALLEL_HPP
#define ENRIFACT_SRC_PARALLEL_HPP

#include <enrifact/ortho.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace enrifact::detail {

/// Runs f(i) for i in [0, n) on up to worker_count() threads. Each index is
/// visited once; the first exception is rethrown on the caller.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
   const std::size_t workers = std::min(worker_count(), n);
   if(workers <= 1) {
      for(std::size_t i = 0; i < n; ++i) {
         f(i);
      }
      return;
   }
   std::atomic<std::size_t> next{0};
   std::exception_ptr error;
   std::mutex error_lock;
   auto run = [&] {
      for(std::size_t i = next++; i < n; i = next++) {
         try {
            f(i);
         } catch(...) {
            std::lock_guard lock(error_lock);
            if(!error) {
               error = std::current_exception();
            }
            next = n;
         }
      }
   };
   std::vector<std::thread> pool;
   for(std::size_t t = 1; t < workers; ++t) {
      pool.emplace_back(run);
   }
   run();
   for(auto& t : pool) {
      t.join();
   }
   if(error) {
      std::rethrow_exception(error);
   }
}

}  // namespace enrifact::detail

#endif
