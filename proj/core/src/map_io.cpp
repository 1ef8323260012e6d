#include "eccmap/map_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "eccmap/pnm.hpp"

namespace eccmap {

std::string_view map_kind_name(MapKind kind) {
    switch (kind) {
    case MapKind::e: return "e";
    case MapKind::pos: return "pos";
    case MapKind::neg: return "neg";
    case MapKind::signed_map: return "signed";
    case MapKind::fg: return "fg";
    }
    return "?";
}

std::optional<MapKind> parse_map_kind(std::string_view name) {
    for (MapKind k : kAllMapKinds)
        if (name == map_kind_name(k))
            return k;
    return std::nullopt;
}

std::uint8_t quantize_unit(double value) {
    if (!(value >= 0.0 && value <= 1.0))
        throw std::invalid_argument("quantize_unit: value outside [0,1]: " +
                                    std::to_string(value));
    return static_cast<std::uint8_t>(std::floor(value * 255.0 + 0.5));
}

std::vector<std::uint8_t> quantize_map(std::span<const float> map) {
    std::vector<std::uint8_t> out(map.size());
    for (std::size_t i = 0; i < map.size(); ++i)
        out[i] = quantize_unit(static_cast<double>(map[i]));
    return out;
}

void write_map_image(const MapBundle& bundle, MapKind kind, const std::filesystem::path& path) {
    if (kind == MapKind::fg) {
        std::vector<std::uint8_t> bytes(bundle.fg.size());
        for (std::size_t i = 0; i < bytes.size(); ++i)
            bytes[i] = bundle.fg[i] ? 255 : 0;
        write_pgm(path, bytes, bundle.width, bundle.height);
        return;
    }
    const std::vector<float>* map = nullptr;
    switch (kind) {
    case MapKind::e: map = &bundle.e; break;
    case MapKind::pos: map = &bundle.e_pos; break;
    case MapKind::neg: map = &bundle.e_neg; break;
    case MapKind::signed_map: map = &bundle.e_signed; break;
    default: break;
    }
    write_pgm(path, quantize_map(*map), bundle.width, bundle.height);
}

MaskImage load_truth_mask(const std::filesystem::path& path) {
    const ImageU8 img = read_pnm(path);
    MaskImage mask;
    mask.width = img.width;
    mask.height = img.height;
    mask.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    if (img.channels == 1) {
        for (std::size_t i = 0; i < mask.pixels.size(); ++i)
            mask.pixels[i] = img.pixels[i] > 127 ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < mask.pixels.size(); ++i) {
            const int sum = img.pixels[i * 3] + img.pixels[i * 3 + 1] + img.pixels[i * 3 + 2];
            mask.pixels[i] = (sum / 3) > 127 ? 1 : 0;
        }
    }
    return mask;
}

} // namespace eccmap
