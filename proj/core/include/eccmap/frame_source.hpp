#ifndef ECCMAP_FRAME_SOURCE_HPP
#define ECCMAP_FRAME_SOURCE_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "eccmap/frame.hpp"

namespace eccmap {

/// Frame delivery failed mid-stream (truncated data, inconsistent frames).
struct StreamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SourceFormat {
    auto_detect,
    image_dir, // directory of binary PGM/PPM frames, sorted by filename
    raw,       // headerless interleaved GRAY8 / RGB24, dimensions supplied
    y4m,       // YUV4MPEG2, C444 or mono only
};

struct SourceOptions {
    SourceFormat format = SourceFormat::auto_detect;
    // Required for raw input: frame dimensions as height x width x channels.
    int raw_height = 0;
    int raw_width = 0;
    int raw_channels = 0;
};

/// Sequential frame producer. All frames share the dimensions reported by
/// the accessors; frames arrive in strictly increasing index order starting
/// at 1. Sources are single-consumer; wrap in PrefetchSource to move the
/// reads onto their own thread.
class FrameSource {
public:
    virtual ~FrameSource() = default;

    virtual int width() const = 0;
    virtual int height() const = 0;
    virtual int channels() const = 0;

    /// Total frames when known up front (directories, raw files).
    virtual std::optional<std::uint64_t> frame_count() const { return std::nullopt; }

    /// Fills `out` with the next frame and returns true, or returns false
    /// at end of stream. Throws StreamError on damaged input.
    virtual bool next(Frame& out) = 0;
};

/// Opens a frame source, inferring the format from the path when the hint
/// is auto_detect (directory -> image_dir, *.y4m -> y4m, otherwise raw).
std::unique_ptr<FrameSource> open_source(const std::filesystem::path& path,
                                         const SourceOptions& options = {});

/// Deterministic uniform-noise stream for benchmarks and self tests.
class SyntheticSource final : public FrameSource {
public:
    SyntheticSource(int height, int width, int channels, std::uint64_t frames,
                    std::uint64_t seed);

    int width() const override { return width_; }
    int height() const override { return height_; }
    int channels() const override { return channels_; }
    std::optional<std::uint64_t> frame_count() const override { return frames_; }
    bool next(Frame& out) override;

private:
    int height_;
    int width_;
    int channels_;
    std::uint64_t frames_;
    std::uint64_t cursor_ = 0;
    std::uint64_t state_;
};

/// Runs an inner source on its own thread with a bounded hand-off queue.
class PrefetchSource final : public FrameSource {
public:
    PrefetchSource(std::unique_ptr<FrameSource> inner, int depth);
    ~PrefetchSource() override;

    int width() const override;
    int height() const override;
    int channels() const override;
    std::optional<std::uint64_t> frame_count() const override;
    bool next(Frame& out) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace eccmap

#endif
