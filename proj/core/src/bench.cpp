#include "eccmap/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <vector>

#include "eccmap/parallel.hpp"
#include "eccmap/state_grid.hpp"

namespace eccmap {

namespace {

using Clock = std::chrono::steady_clock;

// Frames are held as 8-bit planar copies to keep long streams affordable.
struct Preloaded {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::vector<std::uint8_t>> frames;
};

Preloaded preload(FrameSource& source) {
    Preloaded pre;
    Frame f;
    while (source.next(f)) {
        if (pre.frames.empty()) {
            pre.width = f.width;
            pre.height = f.height;
            pre.channels = f.channels;
        }
        std::vector<std::uint8_t> bytes(f.data.size());
        for (std::size_t i = 0; i < bytes.size(); ++i)
            bytes[i] = static_cast<std::uint8_t>(f.data[i]);
        pre.frames.push_back(std::move(bytes));
    }
    return pre;
}

} // namespace

TimingReport run_benchmark(FrameSource& source, const BenchOptions& options) {
    options.params.validate();
    if (options.threads < 1)
        throw std::invalid_argument("run_benchmark: thread count must be >= 1");
    if (options.repeats < 1)
        throw std::invalid_argument("run_benchmark: repeat count must be >= 1");

    const Preloaded pre = preload(source);
    if (pre.frames.empty())
        throw std::runtime_error("run_benchmark: source delivered no frames");

    StateGrid grid(pre.height, pre.width, pre.channels);
    RowPool pool(options.threads);
    MapBundle bundle;
    Frame scratch;
    scratch.resize(pre.width, pre.height, pre.channels);

    std::vector<double> totals;
    totals.reserve(options.repeats);
    for (int rep = 0; rep < options.repeats; ++rep) {
        grid.reset();
        double total = 0.0;
        for (const auto& bytes : pre.frames) {
            for (std::size_t i = 0; i < bytes.size(); ++i)
                scratch.data[i] = static_cast<float>(bytes[i]);

            const auto t0 = Clock::now();
            ingest_frame(grid, scratch, options.params, bundle, options.closing_radius, &pool);
            total += std::chrono::duration<double>(Clock::now() - t0).count();
        }
        totals.push_back(total);
    }

    std::sort(totals.begin(), totals.end());
    const double median = totals[totals.size() / 2];

    TimingReport report;
    report.frames = pre.frames.size();
    report.elapsed = median;
    report.fps = median > 0.0 ? static_cast<double>(report.frames) / median : 0.0;
    report.width = pre.width;
    report.height = pre.height;
    report.channels = pre.channels;
    report.threads = options.threads;
    report.repeats = options.repeats;
    return report;
}

} // namespace eccmap
