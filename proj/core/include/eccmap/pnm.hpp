#ifndef ECCMAP_PNM_HPP
#define ECCMAP_PNM_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace eccmap {

/// Interleaved 8-bit image as stored in binary PGM (P5) and PPM (P6) files.
struct ImageU8 {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> pixels;
};

struct PnmHeader {
    int width = 0;
    int height = 0;
    int channels = 1;
};

/// Parses only the header; used to validate directory contents cheaply.
PnmHeader read_pnm_header(const std::filesystem::path& path);

/// Reads a binary P5/P6 file with maxval 255. Anything else is rejected.
ImageU8 read_pnm(const std::filesystem::path& path);

void write_pgm(const std::filesystem::path& path, std::span<const std::uint8_t> gray,
               int width, int height);

void write_ppm(const std::filesystem::path& path, std::span<const std::uint8_t> rgb,
               int width, int height);

} // namespace eccmap

#endif
