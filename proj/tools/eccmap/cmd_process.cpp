#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>

#include "common.hpp"
#include "eccmap/float_dump.hpp"
#include "eccmap/parallel.hpp"
#include "eccmap/state_grid.hpp"

namespace eccmap::tool {

namespace fs = std::filesystem;

int run_process(const RunConfig& config) {
    // Everything that can be rejected is rejected before any output path
    // is created, so a bad invocation never leaves partial results behind.
    const EccParams params = make_params(config);
    const std::vector<MapKind> kinds = parse_map_list(config.maps);
    if (config.closing < 0)
        throw UsageError("--closing must be >= 0");
    if (config.prefetch < 0)
        throw UsageError("--prefetch must be >= 0");
    const int threads = resolve_threads(config.threads);

    std::unique_ptr<FrameSource> source = open_configured_source(config);
    if (config.prefetch > 0)
        source = std::make_unique<PrefetchSource>(std::move(source), config.prefetch);

    const fs::path out_dir(config.out);
    for (MapKind kind : kinds)
        fs::create_directories(out_dir / map_kind_name(kind));

    std::vector<std::unique_ptr<FloatDumpWriter>> dumps;
    if (config.float_dump)
        for (MapKind kind : kinds)
            dumps.push_back(std::make_unique<FloatDumpWriter>(
                out_dir / (std::string(map_kind_name(kind)) + ".eccm")));

    RowPool pool(threads);
    std::unique_ptr<StateGrid> grid;
    MapBundle bundle;
    Frame frame;
    std::vector<float> fg_floats;

    const auto started = std::chrono::steady_clock::now();
    std::uint64_t frames = 0;
    while (source->next(frame)) {
        if (!grid)
            grid = std::make_unique<StateGrid>(frame.height, frame.width, frame.channels);
        ingest_frame(*grid, frame, params, bundle, config.closing, &pool);
        ++frames;

        char name[32];
        std::snprintf(name, sizeof(name), "%06llu.pgm",
                      static_cast<unsigned long long>(bundle.frame_index));
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            write_map_image(bundle, kinds[i], out_dir / map_kind_name(kinds[i]) / name);
            if (config.float_dump) {
                if (kinds[i] == MapKind::fg) {
                    fg_floats.assign(bundle.fg.begin(), bundle.fg.end());
                    dumps[i]->append(fg_floats, bundle.width, bundle.height,
                                     bundle.frame_index);
                } else {
                    const std::vector<float>* map = nullptr;
                    switch (kinds[i]) {
                    case MapKind::e: map = &bundle.e; break;
                    case MapKind::pos: map = &bundle.e_pos; break;
                    case MapKind::neg: map = &bundle.e_neg; break;
                    default: map = &bundle.e_signed; break;
                    }
                    dumps[i]->append(*map, bundle.width, bundle.height, bundle.frame_index);
                }
            }
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    const double fps = elapsed > 0.0 ? static_cast<double>(frames) / elapsed : 0.0;
    if (grid)
        std::printf("processed %llu frames (%dx%dx%d) in %.3f s, %.1f fps -> %s\n",
                    static_cast<unsigned long long>(frames), grid->height(), grid->width(),
                    grid->channels(), elapsed, fps, out_dir.string().c_str());
    else
        std::printf("processed 0 frames (empty source) -> %s\n", out_dir.string().c_str());
    return kExitOk;
}

} // namespace eccmap::tool
