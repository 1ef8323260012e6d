#include "eccmap/morphology.hpp"

#include <algorithm>
#include <stdexcept>

namespace eccmap {

namespace {

void check_raster(std::span<const std::uint8_t> mask, int width, int height, int radius) {
    if (width < 0 || height < 0)
        throw std::invalid_argument("morphology: negative raster dimensions");
    if (mask.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("morphology: raster size does not match dimensions");
    if (radius < 0)
        throw std::invalid_argument("morphology: negative kernel radius");
}

// Square kernels are separable: a horizontal run followed by a vertical run.

void dilate_rows(const std::uint8_t* in, std::uint8_t* out, int width, int height, int r) {
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* row = in + static_cast<std::size_t>(y) * width;
        std::uint8_t* orow = out + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            const int lo = std::max(0, x - r);
            const int hi = std::min(width - 1, x + r);
            std::uint8_t v = 0;
            for (int j = lo; j <= hi && !v; ++j)
                v = row[j];
            orow[x] = v;
        }
    }
}

void dilate_cols(const std::uint8_t* in, std::uint8_t* out, int width, int height, int r) {
    for (int y = 0; y < height; ++y) {
        const int lo = std::max(0, y - r);
        const int hi = std::min(height - 1, y + r);
        std::uint8_t* orow = out + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            std::uint8_t v = 0;
            for (int i = lo; i <= hi && !v; ++i)
                v = in[static_cast<std::size_t>(i) * width + x];
            orow[x] = v;
        }
    }
}

// Erosion with zero padding: any window that crosses the border sees
// background and the pixel drops out.

void erode_rows(const std::uint8_t* in, std::uint8_t* out, int width, int height, int r) {
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* row = in + static_cast<std::size_t>(y) * width;
        std::uint8_t* orow = out + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            std::uint8_t v = (x - r >= 0 && x + r < width) ? 1 : 0;
            for (int j = x - r; j <= x + r && v; ++j)
                v = row[j];
            orow[x] = v;
        }
    }
}

void erode_cols(const std::uint8_t* in, std::uint8_t* out, int width, int height, int r) {
    for (int y = 0; y < height; ++y) {
        const bool inside = (y - r >= 0 && y + r < height);
        std::uint8_t* orow = out + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            std::uint8_t v = inside ? 1 : 0;
            for (int i = y - r; i <= y + r && v; ++i)
                v = in[static_cast<std::size_t>(i) * width + x];
            orow[x] = v;
        }
    }
}

} // namespace

std::vector<std::uint8_t> binary_dilate(std::span<const std::uint8_t> mask, int width,
                                        int height, int radius) {
    check_raster(mask, width, height, radius);
    std::vector<std::uint8_t> tmp(mask.size());
    std::vector<std::uint8_t> out(mask.size());
    if (radius == 0 || mask.empty()) {
        std::copy(mask.begin(), mask.end(), out.begin());
        return out;
    }
    dilate_rows(mask.data(), tmp.data(), width, height, radius);
    dilate_cols(tmp.data(), out.data(), width, height, radius);
    return out;
}

std::vector<std::uint8_t> binary_erode(std::span<const std::uint8_t> mask, int width,
                                       int height, int radius) {
    check_raster(mask, width, height, radius);
    std::vector<std::uint8_t> tmp(mask.size());
    std::vector<std::uint8_t> out(mask.size());
    if (radius == 0 || mask.empty()) {
        std::copy(mask.begin(), mask.end(), out.begin());
        return out;
    }
    erode_rows(mask.data(), tmp.data(), width, height, radius);
    erode_cols(tmp.data(), out.data(), width, height, radius);
    return out;
}

std::vector<std::uint8_t> binary_closing(std::span<const std::uint8_t> mask, int width,
                                         int height, int radius) {
    check_raster(mask, width, height, radius);
    if (radius == 0 || mask.empty())
        return {mask.begin(), mask.end()};
    return binary_erode(binary_dilate(mask, width, height, radius), width, height, radius);
}

void binary_closing_inplace(std::vector<std::uint8_t>& mask, int width, int height, int radius) {
    if (radius == 0)
        return;
    mask = binary_closing(mask, width, height, radius);
}

} // namespace eccmap
