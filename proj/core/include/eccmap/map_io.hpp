#ifndef ECCMAP_MAP_IO_HPP
#define ECCMAP_MAP_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eccmap/frame.hpp"
#include "eccmap/state_grid.hpp"

namespace eccmap {

enum class MapKind { e, pos, neg, signed_map, fg };

inline constexpr MapKind kAllMapKinds[] = {MapKind::e, MapKind::pos, MapKind::neg,
                                           MapKind::signed_map, MapKind::fg};

std::string_view map_kind_name(MapKind kind);
std::optional<MapKind> parse_map_kind(std::string_view name);

/// Quantizes a unit-interval value to 8 bits, rounding half up (0.5 -> 128).
/// Values outside [0,1] violate the contract and throw.
std::uint8_t quantize_unit(double value);

std::vector<std::uint8_t> quantize_map(std::span<const float> map);

/// Writes one map of a bundle as binary PGM; float maps are quantized,
/// foreground is written as {0,255}.
void write_map_image(const MapBundle& bundle, MapKind kind, const std::filesystem::path& path);

/// Loads a ground-truth mask: single-channel images are thresholded at
/// >127; color images are averaged across channels first. Returns {0,1}.
MaskImage load_truth_mask(const std::filesystem::path& path);

} // namespace eccmap

#endif
