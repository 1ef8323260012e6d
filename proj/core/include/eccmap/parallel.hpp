#ifndef ECCMAP_PARALLEL_HPP
#define ECCMAP_PARALLEL_HPP

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace eccmap {

/// Persistent pool that splits a row range into one contiguous chunk per
/// thread. The calling thread executes chunk 0, workers the rest; run()
/// returns once every chunk finished. Chunk functions must not throw.
class RowPool {
public:
    explicit RowPool(int threads);
    ~RowPool();

    RowPool(const RowPool&) = delete;
    RowPool& operator=(const RowPool&) = delete;

    int thread_count() const { return threads_; }

    void run(int rows, const std::function<void(int, int)>& chunk_fn);

    static int hardware_threads();

private:
    void worker_loop(int id);

    int threads_;
    std::vector<std::thread> workers_;

    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    std::uint64_t generation_ = 0;
    int pending_ = 0;
    int rows_ = 0;
    const std::function<void(int, int)>* fn_ = nullptr;
    bool stopping_ = false;
};

} // namespace eccmap

#endif
