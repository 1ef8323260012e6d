#include "eccmap/float_dump.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace eccmap {

namespace {

constexpr char kMagic[4] = {'E', 'C', 'C', 'M'};

template <typename T>
void put_le(std::string& buf, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i)
        buf.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(const unsigned char* p) {
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        value |= static_cast<T>(p[i]) << (8 * i);
    return value;
}

} // namespace

FloatDumpWriter::FloatDumpWriter(const std::filesystem::path& path)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
    if (!out_)
        throw std::runtime_error(path.string() + ": cannot open for writing");
}

void FloatDumpWriter::append(std::span<const float> values, std::uint32_t width,
                             std::uint32_t height, std::uint64_t frame_index) {
    if (values.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("FloatDumpWriter: raster size does not match dimensions");

    std::string header;
    header.append(kMagic, 4);
    put_le<std::uint16_t>(header, kFloatDumpVersion);
    put_le<std::uint32_t>(header, width);
    put_le<std::uint32_t>(header, height);
    put_le<std::uint64_t>(header, frame_index);
    out_.write(header.data(), static_cast<std::streamsize>(header.size()));

    std::string payload;
    payload.reserve(values.size() * 4);
    for (float v : values)
        put_le<std::uint32_t>(payload, std::bit_cast<std::uint32_t>(v));
    out_.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out_)
        throw std::runtime_error(path_.string() + ": write failed");
    out_.flush();
}

FloatDumpReader::FloatDumpReader(const std::filesystem::path& path)
    : in_(path, std::ios::binary), path_(path) {
    if (!in_)
        throw std::runtime_error(path.string() + ": cannot open");
}

std::optional<FloatDumpRecord> FloatDumpReader::next() {
    unsigned char header[22];
    in_.read(reinterpret_cast<char*>(header), sizeof(header));
    if (in_.gcount() == 0)
        return std::nullopt;
    if (static_cast<std::size_t>(in_.gcount()) != sizeof(header))
        throw std::runtime_error(path_.string() + ": truncated record header");
    if (std::memcmp(header, kMagic, 4) != 0)
        throw std::runtime_error(path_.string() + ": bad magic (not a float dump)");

    FloatDumpRecord rec;
    rec.version = get_le<std::uint16_t>(header + 4);
    rec.width = get_le<std::uint32_t>(header + 6);
    rec.height = get_le<std::uint32_t>(header + 10);
    rec.frame_index = get_le<std::uint64_t>(header + 14);
    if (rec.version != kFloatDumpVersion)
        throw std::runtime_error(path_.string() + ": unsupported dump version " +
                                 std::to_string(rec.version));

    const std::size_t n = static_cast<std::size_t>(rec.width) * rec.height;
    std::vector<unsigned char> payload(n * 4);
    in_.read(reinterpret_cast<char*>(payload.data()),
             static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::size_t>(in_.gcount()) != payload.size())
        throw std::runtime_error(path_.string() + ": truncated record payload");

    rec.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        rec.values[i] = std::bit_cast<float>(get_le<std::uint32_t>(payload.data() + i * 4));
    return rec;
}

} // namespace eccmap
