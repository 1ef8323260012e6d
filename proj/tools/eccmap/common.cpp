#include "common.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "eccmap/parallel.hpp"

namespace eccmap::tool {

EccParams make_params(const RunConfig& config) {
    EccParams p;
    p.alpha = config.alpha;
    p.gamma = config.gamma;
    p.m = config.m;
    try {
        p.warmup = std::max(config.warmup, 0);
        p.validate();
        if (config.warmup < 0)
            p.warmup = effective_window(config.alpha);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return p;
}

int resolve_threads(int requested) {
    if (requested < 0)
        throw UsageError("--threads must be >= 0");
    return requested == 0 ? RowPool::hardware_threads() : requested;
}

void parse_dims(const std::string& text, int& height, int& width, int& channels) {
    char extra = 0;
    if (std::sscanf(text.c_str(), "%dx%dx%d%c", &height, &width, &channels, &extra) != 3 ||
        height < 1 || width < 1)
        throw UsageError("bad dimension spec '" + text + "' (expected AxBxC, e.g. 128x160x3)");
    if (channels != 1 && channels != 3)
        throw UsageError("channel count must be 1 or 3 in '" + text + "'");
}

std::vector<MapKind> parse_map_list(const std::string& list) {
    std::vector<MapKind> kinds;
    std::set<MapKind> seen;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        const auto kind = parse_map_kind(item);
        if (!kind)
            throw UsageError("unknown map kind '" + item +
                             "' (choose from e,pos,neg,signed,fg)");
        if (seen.insert(*kind).second)
            kinds.push_back(*kind);
    }
    if (kinds.empty())
        throw UsageError("--maps selected no maps");
    return kinds;
}

SourceFormat parse_format(const std::string& name) {
    if (name == "auto")
        return SourceFormat::auto_detect;
    if (name == "dir")
        return SourceFormat::image_dir;
    if (name == "raw")
        return SourceFormat::raw;
    if (name == "y4m")
        return SourceFormat::y4m;
    throw UsageError("unknown format '" + name + "' (auto|dir|raw|y4m)");
}

std::unique_ptr<FrameSource> open_configured_source(const RunConfig& config) {
    if (config.synthetic > 0) {
        if (config.raw_dims.empty())
            throw UsageError("--synthetic needs --raw-dims AxBxC for the frame shape");
        int h = 0, w = 0, c = 0;
        parse_dims(config.raw_dims, h, w, c);
        return std::make_unique<SyntheticSource>(h, w, c, config.synthetic, config.seed);
    }
    if (config.input.empty())
        throw UsageError("no input given (use --input PATH or --synthetic N)");

    SourceOptions options;
    options.format = parse_format(config.format);
    if (!config.raw_dims.empty())
        parse_dims(config.raw_dims, options.raw_height, options.raw_width,
                   options.raw_channels);
    return open_source(config.input, options);
}

void write_report(const std::filesystem::path& path,
                  const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error(path.string() + ": cannot open report for writing");
    for (const auto& [key, value] : entries)
        out << key << "=" << value << "\n";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace eccmap::tool
