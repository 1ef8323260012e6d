#ifndef ECCMAP_MORPHOLOGY_HPP
#define ECCMAP_MORPHOLOGY_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace eccmap {

/// Binary morphology with a square structuring element of side 2r+1.
/// Out-of-bounds pixels count as background: dilation never grows past the
/// raster, erosion strips anything whose window leaves it.

std::vector<std::uint8_t> binary_dilate(std::span<const std::uint8_t> mask, int width,
                                        int height, int radius);

std::vector<std::uint8_t> binary_erode(std::span<const std::uint8_t> mask, int width,
                                       int height, int radius);

/// Dilation followed by erosion. radius 0 is a no-op copy.
std::vector<std::uint8_t> binary_closing(std::span<const std::uint8_t> mask, int width,
                                         int height, int radius);

void binary_closing_inplace(std::vector<std::uint8_t>& mask, int width, int height, int radius);

} // namespace eccmap

#endif
