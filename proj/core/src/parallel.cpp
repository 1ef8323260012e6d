#include "eccmap/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace eccmap {

int RowPool::hardware_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

RowPool::RowPool(int threads) : threads_(threads) {
    if (threads_ < 1)
        throw std::invalid_argument("RowPool: thread count must be >= 1");
    workers_.reserve(threads_ - 1);
    for (int id = 1; id < threads_; ++id)
        workers_.emplace_back([this, id] { worker_loop(id); });
}

RowPool::~RowPool() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    start_cv_.notify_all();
    for (auto& w : workers_)
        w.join();
}

void RowPool::run(int rows, const std::function<void(int, int)>& chunk_fn) {
    const auto chunk = [&](int id) {
        const int begin = static_cast<int>(static_cast<std::int64_t>(rows) * id / threads_);
        const int end = static_cast<int>(static_cast<std::int64_t>(rows) * (id + 1) / threads_);
        if (begin < end)
            chunk_fn(begin, end);
    };

    if (threads_ == 1) {
        chunk(0);
        return;
    }

    {
        std::lock_guard lock(mutex_);
        rows_ = rows;
        fn_ = &chunk_fn;
        pending_ = threads_ - 1;
        ++generation_;
    }
    start_cv_.notify_all();

    chunk(0);

    std::unique_lock lock(mutex_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    fn_ = nullptr;
}

void RowPool::worker_loop(int id) {
    std::uint64_t seen = 0;
    for (;;) {
        const std::function<void(int, int)>* fn = nullptr;
        int rows = 0;
        {
            std::unique_lock lock(mutex_);
            start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
            if (stopping_)
                return;
            seen = generation_;
            fn = fn_;
            rows = rows_;
        }
        const int begin = static_cast<int>(static_cast<std::int64_t>(rows) * id / threads_);
        const int end = static_cast<int>(static_cast<std::int64_t>(rows) * (id + 1) / threads_);
        if (begin < end)
            (*fn)(begin, end);
        {
            std::lock_guard lock(mutex_);
            if (--pending_ == 0)
                done_cv_.notify_one();
        }
    }
}

} // namespace eccmap
