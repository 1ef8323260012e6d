#include <cstdio>
#include <filesystem>
#include <memory>

#include "common.hpp"
#include "eccmap/bench.hpp"
#include "eccmap/float_dump.hpp"
#include "eccmap/parallel.hpp"
#include "eccmap/state_grid.hpp"

namespace eccmap::tool {

namespace fs = std::filesystem;

namespace {

// Untimed pass that re-runs the stream and dumps every raster losslessly;
// used to verify that runs with different thread counts are bit-identical.
void dump_maps(const RunConfig& config, const EccParams& params, int threads) {
    auto source = open_configured_source(config);
    const fs::path out_dir(config.out);
    fs::create_directories(out_dir);

    std::vector<MapKind> kinds(std::begin(kAllMapKinds), std::end(kAllMapKinds));
    std::vector<std::unique_ptr<FloatDumpWriter>> writers;
    for (MapKind kind : kinds)
        writers.push_back(std::make_unique<FloatDumpWriter>(
            out_dir / (std::string(map_kind_name(kind)) + ".eccm")));

    RowPool pool(threads);
    std::unique_ptr<StateGrid> grid;
    MapBundle bundle;
    Frame frame;
    std::vector<float> fg_floats;
    while (source->next(frame)) {
        if (!grid)
            grid = std::make_unique<StateGrid>(frame.height, frame.width, frame.channels);
        ingest_frame(*grid, frame, params, bundle, config.closing, &pool);
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            switch (kinds[i]) {
            case MapKind::e:
                writers[i]->append(bundle.e, bundle.width, bundle.height, bundle.frame_index);
                break;
            case MapKind::pos:
                writers[i]->append(bundle.e_pos, bundle.width, bundle.height,
                                   bundle.frame_index);
                break;
            case MapKind::neg:
                writers[i]->append(bundle.e_neg, bundle.width, bundle.height,
                                   bundle.frame_index);
                break;
            case MapKind::signed_map:
                writers[i]->append(bundle.e_signed, bundle.width, bundle.height,
                                   bundle.frame_index);
                break;
            case MapKind::fg:
                fg_floats.assign(bundle.fg.begin(), bundle.fg.end());
                writers[i]->append(fg_floats, bundle.width, bundle.height,
                                   bundle.frame_index);
                break;
            }
        }
    }
}

} // namespace

int run_bench(const RunConfig& config) {
    const EccParams params = make_params(config);
    parse_map_list(config.maps); // nothing to time when no maps are selected
    if (config.repeat < 1)
        throw UsageError("--repeat must be >= 1");
    if (config.closing < 0)
        throw UsageError("--closing must be >= 0");
    const int threads = resolve_threads(config.threads);

    BenchOptions options;
    options.params = params;
    options.threads = threads;
    options.repeats = config.repeat;
    options.closing_radius = config.closing;

    TimingReport report;
    {
        auto source = open_configured_source(config);
        report = run_benchmark(*source, options);
    }

    std::printf("bench: %llu frames at %dx%dx%d, threads=%d, repeats=%d\n",
                static_cast<unsigned long long>(report.frames), report.height, report.width,
                report.channels, report.threads, report.repeats);
    std::printf("median map-generation time %.4f s, %.1f fps (writes excluded)\n",
                report.elapsed, report.fps);
    std::printf("reference: 633 frames at 160x128x3 in 0.142 s (~4458 fps) "
                "on a single 2.8 GHz core\n");

    if (!config.report.empty())
        write_report(config.report,
                     {{"frames", std::to_string(report.frames)},
                      {"width", std::to_string(report.width)},
                      {"height", std::to_string(report.height)},
                      {"channels", std::to_string(report.channels)},
                      {"threads", std::to_string(report.threads)},
                      {"repeats", std::to_string(report.repeats)},
                      {"elapsed", format_double(report.elapsed)},
                      {"fps", format_double(report.fps)}});

    if (config.float_dump)
        dump_maps(config, params, threads);
    return kExitOk;
}

} // namespace eccmap::tool
