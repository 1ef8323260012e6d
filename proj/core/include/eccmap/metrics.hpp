#ifndef ECCMAP_METRICS_HPP
#define ECCMAP_METRICS_HPP

#include <cstdint>
#include <span>

namespace eccmap {

/// Pixel-wise confusion counts, mergeable across frames and workers.
struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        tn += o.tn;
        fn += o.fn;
        return *this;
    }
};

/// Adds one predicted/truth raster pair (values {0,1}) into the counts.
/// Throws if the rasters differ in size.
void accumulate(ConfusionCounts& counts, std::span<const std::uint8_t> predicted,
                std::span<const std::uint8_t> truth);

/// Derived segmentation scores. Ratios whose denominator is zero are
/// reported as quiet NaN, never as 0.
struct SegMetrics {
    double tpr; // recall, tp / (tp + fn)
    double ppv; // precision, tp / (tp + fp)
    double acc; // (tp + tn) / total
    double f1;  // harmonic mean of ppv and tpr
};

/// Throws on all-zero counts (nothing was scored).
SegMetrics compute_metrics(const ConfusionCounts& counts);

} // namespace eccmap

#endif
