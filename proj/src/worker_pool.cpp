#include "worker_pool.hpp"

#include <algorithm>
#include <utility>

namespace hga {

WorkerPool::WorkerPool(int workers) : width_(std::max(1, workers)) {
  threads_.reserve(width_ - 1);
  for (int slot = 1; slot < width_; ++slot) threads_.emplace_back([this, slot] { worker_loop(slot); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::run_chunk(int slot) {
  const std::int64_t begin = count_ * slot / width_;
  const std::int64_t end = count_ * (slot + 1) / width_;
  if (begin >= end) return;
  try {
    (*body_)(begin, end);
  } catch (...) {
    std::lock_guard lock(mutex_);
    if (!error_) error_ = std::current_exception();
  }
}

void WorkerPool::parallel_for(std::int64_t count, const RangeFn& body) {
  if (count <= 0) return;
  if (width_ == 1) {
    body(0, count);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    body_ = &body;
    count_ = count;
    pending_ = width_ - 1;
    error_ = nullptr;
    ++epoch_;
  }
  wake_.notify_all();
  run_chunk(0);
  std::unique_lock lock(mutex_);
  done_.wait(lock, [this] { return pending_ == 0; });
  body_ = nullptr;
  if (error_) {
    auto error = std::exchange(error_, nullptr);
    std::rethrow_exception(error);
  }
}

void WorkerPool::worker_loop(int slot) {
  std::uint64_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stopping_ || epoch_ != seen; });
      if (stopping_) return;
      seen = epoch_;
    }
    run_chunk(slot);
    {
      std::lock_guard lock(mutex_);
      --pending_;
    }
    done_.notify_one();
  }
}

}  // namespace hga
