#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hga {

/// Fixed-width pool of persistent threads running one data-parallel loop at a
/// time. The calling thread takes the first chunk. With one worker everything
/// runs inline.
class WorkerPool {
 public:
  using RangeFn = std::function<void(std::int64_t begin, std::int64_t end)>;

  explicit WorkerPool(int workers = 1);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int size() const noexcept { return width_; }

  /// Splits [0, count) into contiguous chunks and blocks until every chunk
  /// ran. The first exception thrown by any chunk is rethrown here.
  void parallel_for(std::int64_t count, const RangeFn& body);

 private:
  void worker_loop(int slot);
  void run_chunk(int slot);

  int width_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const RangeFn* body_ = nullptr;
  std::int64_t count_ = 0;
  std::uint64_t epoch_ = 0;
  int pending_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

}  // namespace hga
