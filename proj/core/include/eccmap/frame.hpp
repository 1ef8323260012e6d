#ifndef ECCMAP_FRAME_HPP
#define ECCMAP_FRAME_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace eccmap {

/// One frame of a stream, stored as planar float32: `channels` planes of
/// height x width row-major intensities in [0, 255]. Sources widen 8-bit
/// input on read; planar layout keeps the per-pixel sweep unit-stride.
struct Frame {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::uint64_t index = 0;
    std::vector<float> data;

    void resize(int w, int h, int c) {
        width = w;
        height = h;
        channels = c;
        data.resize(static_cast<std::size_t>(w) * h * c);
    }

    std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }

    std::span<float> plane(int c) { return {data.data() + pixels() * c, pixels()}; }
    std::span<const float> plane(int c) const { return {data.data() + pixels() * c, pixels()}; }
};

/// Non-owning view of a planar frame.
struct FrameView {
    int width = 0;
    int height = 0;
    int channels = 0;
    const float* data = nullptr;

    FrameView() = default;
    FrameView(const Frame& f)
        : width(f.width), height(f.height), channels(f.channels), data(f.data.data()) {}
    FrameView(int w, int h, int c, const float* d) : width(w), height(h), channels(c), data(d) {}

    std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }

    std::span<const float> plane(int c) const { return {data + pixels() * c, pixels()}; }
};

/// Binary raster with {0,1} values, used for foreground and truth masks.
struct MaskImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;
};

} // namespace eccmap

#endif
