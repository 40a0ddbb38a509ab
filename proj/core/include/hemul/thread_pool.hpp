// Minimal fixed-size thread pool with a blocking parallel_for. Work is split
// into contiguous ranges with a static partition, so results never depend on
// scheduling. A null pool (or size 1) runs the body inline.

#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hemul {

class ThreadPool {
 public:
  explicit ThreadPool(int threads) {
    for (int i = 1; i < threads; ++i) {
      workers_.emplace_back([this] { worker_loop(); });
    }
  }

  ~ThreadPool() {
    {
      std::lock_guard<std::mutex> lk(m_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& t : workers_) t.join();
  }

  int size() const { return static_cast<int>(workers_.size()) + 1; }

  // Calls body(lo, hi) on [0, total) split into size() contiguous chunks;
  // the calling thread takes the first chunk. Returns after all complete.
  void parallel_for(int64_t total,
                    const std::function<void(int64_t, int64_t)>& body) {
    const int nt = size();
    if (nt == 1 || total <= 1) {
      body(0, total);
      return;
    }
    const int64_t chunk = (total + nt - 1) / nt;
    {
      std::lock_guard<std::mutex> lk(m_);
      pending_ = 0;
      for (int i = 1; i < nt; ++i) {
        const int64_t lo = chunk * i;
        const int64_t hi = std::min<int64_t>(lo + chunk, total);
        if (lo >= hi) continue;
        tasks_.push_back([&body, lo, hi] { body(lo, hi); });
        ++pending_;
      }
    }
    cv_.notify_all();
    body(0, std::min<int64_t>(chunk, total));
    std::unique_lock<std::mutex> lk(m_);
    done_cv_.wait(lk, [this] { return pending_ == 0 && tasks_.empty(); });
  }

 private:
  void worker_loop() {
    for (;;) {
      std::function<void()> task;
      {
        std::unique_lock<std::mutex> lk(m_);
        cv_.wait(lk, [this] { return stop_ || !tasks_.empty(); });
        if (stop_ && tasks_.empty()) return;
        task = std::move(tasks_.back());
        tasks_.pop_back();
      }
      task();
      {
        std::lock_guard<std::mutex> lk(m_);
        --pending_;
      }
      done_cv_.notify_one();
    }
  }

  std::vector<std::thread> workers_;
  std::vector<std::function<void()>> tasks_;
  std::mutex m_;
  std::condition_variable cv_, done_cv_;
  int pending_ = 0;
  bool stop_ = false;
};

// Helper: run body over [0, total) using pool if non-null, inline otherwise.
inline void pool_for(ThreadPool* pool, int64_t total,
                     const std::function<void(int64_t, int64_t)>& body) {
  if (pool)
    pool->parallel_for(total, body);
  else
    body(0, total);
}

}  // namespace hemul
