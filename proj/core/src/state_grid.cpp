#include "eccmap/state_grid.hpp"

#include <stdexcept>

#include "eccmap/morphology.hpp"
#include "eccmap/parallel.hpp"

namespace eccmap {

void MapBundle::resize(int w, int h) {
    width = w;
    height = h;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    e.resize(n);
    e_pos.resize(n);
    e_neg.resize(n);
    e_signed.resize(n);
    fg.resize(n);
}

StateGrid::StateGrid(int height, int width, int channels)
    : height_(height), width_(width), channels_(channels) {
    if (height < 1 || width < 1)
        throw std::invalid_argument("StateGrid: dimensions must be >= 1");
    if (channels != 1 && channels != 3)
        throw std::invalid_argument("StateGrid: channel count must be 1 or 3");
    means_.assign(pixels() * channels_, 0.0);
    variance_.assign(pixels(), 0.0);
}

std::span<const double> StateGrid::mean_plane(int c) const {
    if (c < 0 || c >= channels_)
        throw std::invalid_argument("StateGrid: channel index out of range");
    return {means_.data() + pixels() * c, pixels()};
}

void StateGrid::reset() {
    frames_seen_ = 0;
    std::fill(means_.begin(), means_.end(), 0.0);
    std::fill(variance_.begin(), variance_.end(), 0.0);
}

namespace {

struct RowTask {
    const float* const* src;    // one pointer per channel plane
    double* const* mean;        // one pointer per channel plane
    double* variance;
    float* e;
    float* e_pos;
    float* e_neg;
    float* e_signed;
    std::uint8_t* fg;
    int width;
    double alpha;
    double gamma;
    double threshold; // xi units
    bool fg_live;
};

// First frame: state takes the sample directly and every map is neutral.
// xi sits at alpha here, which only crosses the threshold for m < 1.
template <int C>
void init_rows(const RowTask& t, int row_begin, int row_end) {
    const std::uint8_t fg = (t.fg_live && t.alpha > t.threshold) ? 1 : 0;
    const std::size_t begin = static_cast<std::size_t>(row_begin) * t.width;
    const std::size_t end = static_cast<std::size_t>(row_end) * t.width;
    for (std::size_t i = begin; i < end; ++i) {
        for (int c = 0; c < C; ++c)
            t.mean[c][i] = static_cast<double>(t.src[c][i]);
        t.variance[i] = 0.0;
        t.e[i] = 0.0f;
        t.e_pos[i] = 0.0f;
        t.e_neg[i] = 0.0f;
        t.e_signed[i] = 0.5f;
        t.fg[i] = fg;
    }
}

// Steady state: the same arithmetic as the scalar stream functions, pixel
// by pixel over the statistic planes. The expressions (and their channel
// accumulation order) must stay in lock step with eccentricity.hpp so the
// grid reproduces the scalar path bit for bit.
template <int C>
void update_rows(const RowTask& t, int row_begin, int row_end) {
    const double alpha = t.alpha;
    const double gamma = t.gamma;
    const double threshold = t.threshold;
    const std::uint8_t live = t.fg_live ? 1 : 0;
    const std::size_t begin = static_cast<std::size_t>(row_begin) * t.width;
    const std::size_t end = static_cast<std::size_t>(row_end) * t.width;
    for (std::size_t i = begin; i < end; ++i) {
        double dev2 = 0.0;
        double xnorm = 0.0;
        double mnorm = 0.0;
        for (int c = 0; c < C; ++c) {
            const double x = static_cast<double>(t.src[c][i]);
            const double mu = detail::mean_step(t.mean[c][i], x, alpha);
            t.mean[c][i] = mu;
            const double d = mu - x;
            dev2 += d * d;
            xnorm += x * x;
            mnorm += mu * mu;
        }
        const double var = detail::variance_step(t.variance[i], dev2, alpha);
        t.variance[i] = var;
        const double xi = detail::xi_step(dev2, var, alpha, gamma);
        const double eps = detail::eps_from_xi(xi, alpha);

        const float fe = static_cast<float>(eps);
        const bool positive = xnorm >= mnorm;
        const float fpos = positive ? fe : 0.0f;
        const float fneg = positive ? 0.0f : fe;
        t.e[i] = fe;
        t.e_pos[i] = fpos;
        t.e_neg[i] = fneg;
        t.e_signed[i] = 0.5f + (fpos - fneg) * 0.5f;
        t.fg[i] = (xi > threshold) ? live : 0;
    }
}

template <int C>
void run_rows(const RowTask& t, bool first_frame, int height, RowPool* pool) {
    const auto body = [&](int r0, int r1) {
        if (first_frame)
            init_rows<C>(t, r0, r1);
        else
            update_rows<C>(t, r0, r1);
    };
    if (pool != nullptr && pool->thread_count() > 1)
        pool->run(height, body);
    else
        body(0, height);
}

} // namespace

MapBundle& ingest_frame(StateGrid& grid, const FrameView& frame, const EccParams& params,
                        MapBundle& out, int closing_radius, RowPool* pool) {
    params.validate();
    if (frame.width != grid.width() || frame.height != grid.height() ||
        frame.channels != grid.channels())
        throw std::runtime_error("ingest_frame: frame dimensions do not match grid");
    if (frame.data == nullptr)
        throw std::invalid_argument("ingest_frame: null frame data");
    if (closing_radius < 0)
        throw std::invalid_argument("ingest_frame: negative closing radius");

    grid.frames_seen_ += 1;
    out.resize(grid.width(), grid.height());
    out.frame_index = grid.frames_seen_;

    const std::size_t n = grid.pixels();
    const float* src[3] = {nullptr, nullptr, nullptr};
    double* mean[3] = {nullptr, nullptr, nullptr};
    for (int c = 0; c < grid.channels(); ++c) {
        src[c] = frame.plane(c).data();
        mean[c] = grid.means_.data() + n * c;
    }

    RowTask task{src,
                 mean,
                 grid.variance_.data(),
                 out.e.data(),
                 out.e_pos.data(),
                 out.e_neg.data(),
                 out.e_signed.data(),
                 out.fg.data(),
                 grid.width(),
                 params.alpha,
                 params.gamma,
                 anomaly_threshold_finite(params),
                 grid.frames_seen_ > static_cast<std::uint64_t>(params.warmup)};

    const bool first = grid.frames_seen_ == 1;
    if (grid.channels() == 1)
        run_rows<1>(task, first, grid.height(), pool);
    else
        run_rows<3>(task, first, grid.height(), pool);

    if (closing_radius > 0)
        binary_closing_inplace(out.fg, out.width, out.height, closing_radius);
    return out;
}

MapBundle ingest_frame(StateGrid& grid, const FrameView& frame, const EccParams& params,
                       int closing_radius, RowPool* pool) {
    MapBundle out;
    ingest_frame(grid, frame, params, out, closing_radius, pool);
    return out;
}

std::vector<std::uint8_t> foreground_mask(std::span<const float> xi_raster,
                                          const EccParams& params) {
    const double threshold = anomaly_threshold_finite(params);
    std::vector<std::uint8_t> mask(xi_raster.size());
    for (std::size_t i = 0; i < xi_raster.size(); ++i)
        mask[i] = static_cast<double>(xi_raster[i]) > threshold ? 1 : 0;
    return mask;
}

} // namespace eccmap
