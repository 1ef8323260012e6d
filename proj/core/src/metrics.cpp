#include "eccmap/metrics.hpp"

#include <limits>
#include <stdexcept>

namespace eccmap {

void accumulate(ConfusionCounts& counts, std::span<const std::uint8_t> predicted,
                std::span<const std::uint8_t> truth) {
    if (predicted.size() != truth.size())
        throw std::invalid_argument("accumulate: predicted/truth raster sizes differ");
    ConfusionCounts local;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = predicted[i] != 0;
        const bool t = truth[i] != 0;
        local.tp += (p && t);
        local.fp += (p && !t);
        local.fn += (!p && t);
        local.tn += (!p && !t);
    }
    counts += local;
}

SegMetrics compute_metrics(const ConfusionCounts& c) {
    if (c.total() == 0)
        throw std::invalid_argument("compute_metrics: all-zero counts");
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    SegMetrics m{nan, nan, nan, nan};
    if (c.tp + c.fn > 0)
        m.tpr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (c.tp + c.fp > 0)
        m.ppv = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    m.acc = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    if (m.tpr == m.tpr && m.ppv == m.ppv && m.ppv + m.tpr > 0.0)
        m.f1 = 2.0 * m.ppv * m.tpr / (m.ppv + m.tpr);
    return m;
}

} // namespace eccmap
