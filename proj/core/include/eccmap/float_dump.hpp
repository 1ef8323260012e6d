#ifndef ECCMAP_FLOAT_DUMP_HPP
#define ECCMAP_FLOAT_DUMP_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <vector>

namespace eccmap {

/// Lossless raster dump stream. A file is a sequence of records, each:
///
///   magic "ECCM" (4 bytes), version u16, width u32, height u32,
///   frame_index u64, then width*height float32 row-major
///
/// every field little-endian. Round trips preserve all 32 bits of every
/// value, which makes the format suitable for bit-exact comparisons.
struct FloatDumpRecord {
    std::uint16_t version = 0;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint64_t frame_index = 0;
    std::vector<float> values;
};

inline constexpr std::uint16_t kFloatDumpVersion = 1;

class FloatDumpWriter {
public:
    explicit FloatDumpWriter(const std::filesystem::path& path);

    void append(std::span<const float> values, std::uint32_t width, std::uint32_t height,
                std::uint64_t frame_index);

private:
    std::ofstream out_;
    std::filesystem::path path_;
};

class FloatDumpReader {
public:
    explicit FloatDumpReader(const std::filesystem::path& path);

    /// Next record, or nullopt at a clean end of file.
    std::optional<FloatDumpRecord> next();

private:
    std::ifstream in_;
    std::filesystem::path path_;
};

} // namespace eccmap

#endif
