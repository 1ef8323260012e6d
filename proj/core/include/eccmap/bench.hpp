#ifndef ECCMAP_BENCH_HPP
#define ECCMAP_BENCH_HPP

#include <cstdint>

#include "eccmap/frame_source.hpp"
#include "eccmap/params.hpp"

namespace eccmap {

struct TimingReport {
    std::uint64_t frames = 0;
    double elapsed = 0.0; // seconds spent in map generation, median of repeats
    double fps = 0.0;     // frames / elapsed
    int width = 0;
    int height = 0;
    int channels = 0;
    int threads = 1;
    int repeats = 1;
};

struct BenchOptions {
    EccParams params;
    int threads = 1;
    int repeats = 3;
    int closing_radius = 0;
};

/// End-to-end map-generation timing over all frames of a source. Frames
/// are preloaded into memory once (so repeats never re-open the source)
/// and widened outside the clock; the timed region covers the per-pixel
/// statistics, all five maps and mask generation, with no disk writes.
/// Throws on an empty source.
TimingReport run_benchmark(FrameSource& source, const BenchOptions& options);

} // namespace eccmap

#endif
