#ifndef ECCMAP_STATE_GRID_HPP
#define ECCMAP_STATE_GRID_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "eccmap/eccentricity.hpp"
#include "eccmap/frame.hpp"
#include "eccmap/params.hpp"

namespace eccmap {

class RowPool;

/// One frame's worth of map products. The float rasters hold normalized
/// eccentricity values in [0,1]; fg holds {0,1}. Elementwise,
/// e == e_pos + e_neg and e_signed == 0.5 + (e_pos - e_neg)/2, both exact
/// in float arithmetic.
struct MapBundle {
    int width = 0;
    int height = 0;
    std::uint64_t frame_index = 0;
    std::vector<float> e;
    std::vector<float> e_pos;
    std::vector<float> e_neg;
    std::vector<float> e_signed;
    std::vector<std::uint8_t> fg;

    void resize(int w, int h);
    std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }
};

/// Per-pixel stream statistics for an a x b frame with c channels, stored
/// as one plane per statistic so the per-frame pass is a streaming sweep.
/// Each pixel is an independent stream; the grid carries no cross-pixel
/// state, so rows may be processed by any number of workers with bitwise
/// identical results.
class StateGrid {
public:
    /// Dimensions follow frame conventions: a = height, b = width.
    StateGrid(int height, int width, int channels);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    std::uint64_t frames_seen() const { return frames_seen_; }
    std::size_t pixels() const { return static_cast<std::size_t>(width_) * height_; }

    std::span<const double> mean_plane(int c) const;
    std::span<const double> variance_plane() const { return variance_; }

    /// Drops all accumulated statistics; the next frame re-initializes.
    void reset();

    friend MapBundle& ingest_frame(StateGrid&, const FrameView&, const EccParams&,
                                   MapBundle&, int, RowPool*);

private:
    int height_;
    int width_;
    int channels_;
    std::uint64_t frames_seen_ = 0;
    std::vector<double> means_;    // channels planes, each height*width
    std::vector<double> variance_; // height*width
};

/// Advances every pixel state with one frame and fills all five maps.
/// Foreground is thresholded on raw xi against the finite-memory Chebyshev
/// cutoff, suppressed for the first `params.warmup` frames, and closed with
/// a square kernel when closing_radius > 0. Pixel visitation order does not
/// affect the result; pass a RowPool to spread rows across workers.
MapBundle& ingest_frame(StateGrid& grid, const FrameView& frame, const EccParams& params,
                        MapBundle& out, int closing_radius = 0, RowPool* pool = nullptr);

MapBundle ingest_frame(StateGrid& grid, const FrameView& frame, const EccParams& params,
                       int closing_radius = 0, RowPool* pool = nullptr);

/// Mask over a raster of raw xi values: 1 where xi strictly exceeds the
/// finite-memory Chebyshev threshold.
std::vector<std::uint8_t> foreground_mask(std::span<const float> xi_raster,
                                          const EccParams& params);

} // namespace eccmap

#endif
