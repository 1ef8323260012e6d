#ifndef ECCMAP_TOOL_COMMON_HPP
#define ECCMAP_TOOL_COMMON_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eccmap/frame_source.hpp"
#include "eccmap/map_io.hpp"
#include "eccmap/params.hpp"

namespace eccmap::tool {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSelftest = 3;

/// Configuration problem detected after flag parsing; exits with the usage
/// code before any input is touched or output written.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything the subcommands can be asked to do, straight from the flags.
struct RunConfig {
    std::string input;
    std::string format = "auto";
    std::string raw_dims;

    double alpha = 0.05;
    double gamma = 10.0;
    double m = 3.0;
    int warmup = -1; // derive from alpha when negative

    std::string maps = "e,pos,neg,signed,fg";
    int closing = 0;
    bool float_dump = false;
    std::string out = "eccmap-out";
    int threads = 0; // 0 = all hardware threads
    int prefetch = 8;
    int repeat = 3;
    std::string report;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::uint64_t synthetic = 0;

    std::string pred_dir;
    std::string truth_dir;

    int trials = 1000;
    bool inject_plain_distance = false;
};

EccParams make_params(const RunConfig& config);

int resolve_threads(int requested);

/// Parses "AxBxC" (height x width x channels).
void parse_dims(const std::string& text, int& height, int& width, int& channels);

std::vector<MapKind> parse_map_list(const std::string& list);

SourceFormat parse_format(const std::string& name);

std::unique_ptr<FrameSource> open_configured_source(const RunConfig& config);

void write_report(const std::filesystem::path& path,
                  const std::vector<std::pair<std::string, std::string>>& entries);

std::string format_double(double v);

int run_process(const RunConfig& config);
int run_eval(const RunConfig& config);
int run_bench(const RunConfig& config);
int run_selftest(const RunConfig& config);

} // namespace eccmap::tool

#endif
