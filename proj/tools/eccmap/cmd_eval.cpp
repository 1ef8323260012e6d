#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "common.hpp"
#include "eccmap/metrics.hpp"

namespace eccmap::tool {

namespace fs = std::filesystem;

namespace {

// Frames are paired by the trailing digit run of the file stem, so
// pred/000017.pgm matches truth named gt000017.pgm or 17.pgm alike.
std::optional<std::uint64_t> filename_index(const fs::path& path) {
    const std::string stem = path.stem().string();
    auto end = stem.end();
    while (end != stem.begin() && !std::isdigit(static_cast<unsigned char>(*(end - 1))))
        --end;
    auto begin = end;
    while (begin != stem.begin() && std::isdigit(static_cast<unsigned char>(*(begin - 1))))
        --begin;
    if (begin == end)
        return std::nullopt;
    try {
        return std::stoull(std::string(begin, end));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::map<std::uint64_t, fs::path> index_directory(const fs::path& dir) {
    if (!fs::is_directory(dir))
        throw std::runtime_error(dir.string() + ": not a directory");
    std::map<std::uint64_t, fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        const auto ext = entry.path().extension().string();
        if (ext != ".pgm" && ext != ".ppm" && ext != ".pnm")
            continue;
        if (const auto idx = filename_index(entry.path()))
            files.emplace(*idx, entry.path());
    }
    return files;
}

} // namespace

int run_eval(const RunConfig& config) {
    if (config.pred_dir.empty() || config.truth_dir.empty())
        throw UsageError("eval needs --pred DIR and --truth DIR");

    const auto pred = index_directory(config.pred_dir);
    const auto truth = index_directory(config.truth_dir);

    ConfusionCounts counts;
    std::uint64_t scored = 0;
    for (const auto& [idx, truth_path] : truth) {
        const auto it = pred.find(idx);
        if (it == pred.end())
            continue;
        const MaskImage t = load_truth_mask(truth_path);
        const MaskImage p = load_truth_mask(it->second);
        if (t.width != p.width || t.height != p.height)
            throw std::runtime_error("dimension mismatch for frame " + std::to_string(idx) +
                                     ": prediction " + std::to_string(p.width) + "x" +
                                     std::to_string(p.height) + " vs truth " +
                                     std::to_string(t.width) + "x" + std::to_string(t.height));
        accumulate(counts, p.pixels, t.pixels);
        ++scored;
    }

    if (scored == 0)
        throw std::runtime_error("no prediction/truth pairs matched by filename index");

    const SegMetrics m = compute_metrics(counts);
    std::printf("scored %llu frame pairs (%llu pixels)\n",
                static_cast<unsigned long long>(scored),
                static_cast<unsigned long long>(counts.total()));
    std::printf("tp=%llu fp=%llu tn=%llu fn=%llu\n", static_cast<unsigned long long>(counts.tp),
                static_cast<unsigned long long>(counts.fp),
                static_cast<unsigned long long>(counts.tn),
                static_cast<unsigned long long>(counts.fn));
    std::printf("TPR %.4f  PPV %.4f  ACC %.4f  F1 %.4f\n", m.tpr, m.ppv, m.acc, m.f1);

    if (!config.report.empty())
        write_report(config.report,
                     {{"frames", std::to_string(scored)},
                      {"tp", std::to_string(counts.tp)},
                      {"fp", std::to_string(counts.fp)},
                      {"tn", std::to_string(counts.tn)},
                      {"fn", std::to_string(counts.fn)},
                      {"tpr", format_double(m.tpr)},
                      {"ppv", format_double(m.ppv)},
                      {"acc", format_double(m.acc)},
                      {"f1", format_double(m.f1)}});
    return kExitOk;
}

} // namespace eccmap::tool
