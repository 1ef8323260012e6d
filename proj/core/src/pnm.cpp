#include "eccmap/pnm.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>

namespace eccmap {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch))
            continue;
        tok.push_back(static_cast<char>(ch));
        while ((ch = in.peek()) != EOF && !std::isspace(ch) && ch != '#')
            tok.push_back(static_cast<char>(in.get()));
        return tok;
    }
    return tok;
}

PnmHeader parse_header(std::istream& in, const std::filesystem::path& path) {
    const std::string magic = next_token(in);
    PnmHeader h;
    if (magic == "P5")
        h.channels = 1;
    else if (magic == "P6")
        h.channels = 3;
    else
        fail(path, "unsupported format '" + magic + "' (expected binary P5/P6)");

    try {
        h.width = std::stoi(next_token(in));
        h.height = std::stoi(next_token(in));
        const int maxval = std::stoi(next_token(in));
        if (maxval != 255)
            fail(path, "unsupported maxval " + std::to_string(maxval) + " (only 255)");
    } catch (const std::invalid_argument&) {
        fail(path, "malformed header");
    }
    if (h.width < 1 || h.height < 1)
        fail(path, "invalid dimensions");
    // exactly one whitespace byte separates maxval from the raster
    in.get();
    return h;
}

} // namespace

PnmHeader read_pnm_header(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(path, "cannot open");
    return parse_header(in, path);
}

ImageU8 read_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(path, "cannot open");
    const PnmHeader h = parse_header(in, path);

    ImageU8 img;
    img.width = h.width;
    img.height = h.height;
    img.channels = h.channels;
    const std::size_t bytes =
        static_cast<std::size_t>(h.width) * h.height * h.channels;
    img.pixels.resize(bytes);
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(in.gcount()) != bytes)
        fail(path, "truncated pixel data");
    return img;
}

namespace {

void write_pnm(const std::filesystem::path& path, const char* magic,
               std::span<const std::uint8_t> data, int width, int height, int channels) {
    if (data.size() != static_cast<std::size_t>(width) * height * channels)
        throw std::invalid_argument("write_pnm: buffer size does not match dimensions");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(path, "cannot open for writing");
    out << magic << "\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out)
        fail(path, "write failed");
}

} // namespace

void write_pgm(const std::filesystem::path& path, std::span<const std::uint8_t> gray,
               int width, int height) {
    write_pnm(path, "P5", gray, width, height, 1);
}

void write_ppm(const std::filesystem::path& path, std::span<const std::uint8_t> rgb,
               int width, int height) {
    write_pnm(path, "P6", rgb, width, height, 3);
}

} // namespace eccmap
