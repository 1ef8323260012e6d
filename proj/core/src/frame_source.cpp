#include "eccmap/frame_source.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "eccmap/pnm.hpp"

namespace eccmap {

namespace {

namespace fs = std::filesystem;

void widen_interleaved(const std::uint8_t* src, Frame& dst) {
    const std::size_t n = dst.pixels();
    const int c = dst.channels;
    if (c == 1) {
        float* out = dst.data.data();
        for (std::size_t i = 0; i < n; ++i)
            out[i] = static_cast<float>(src[i]);
        return;
    }
    for (int ch = 0; ch < c; ++ch) {
        float* out = dst.plane(ch).data();
        const std::uint8_t* in = src + ch;
        for (std::size_t i = 0; i < n; ++i)
            out[i] = static_cast<float>(in[i * c]);
    }
}

void widen_planar(const std::uint8_t* src, Frame& dst) {
    const std::size_t n = dst.pixels() * dst.channels;
    float* out = dst.data.data();
    for (std::size_t i = 0; i < n; ++i)
        out[i] = static_cast<float>(src[i]);
}

class ImageDirSource final : public FrameSource {
public:
    explicit ImageDirSource(const fs::path& dir) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (!entry.is_regular_file())
                continue;
            const auto ext = entry.path().extension().string();
            if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")
                files_.push_back(entry.path());
        }
        std::sort(files_.begin(), files_.end());
        if (files_.empty())
            return;
        const PnmHeader first = read_pnm_header(files_.front());
        width_ = first.width;
        height_ = first.height;
        channels_ = first.channels;
        for (const auto& f : files_) {
            const PnmHeader h = read_pnm_header(f);
            if (h.width != width_ || h.height != height_ || h.channels != channels_)
                throw StreamError(f.string() + ": frame dimensions differ from " +
                                  files_.front().string());
        }
    }

    int width() const override { return width_; }
    int height() const override { return height_; }
    int channels() const override { return channels_; }
    std::optional<std::uint64_t> frame_count() const override { return files_.size(); }

    bool next(Frame& out) override {
        if (cursor_ >= files_.size())
            return false;
        const ImageU8 img = read_pnm(files_[cursor_]);
        out.resize(img.width, img.height, img.channels);
        out.index = ++index_;
        widen_interleaved(img.pixels.data(), out);
        ++cursor_;
        return true;
    }

private:
    std::vector<fs::path> files_;
    std::size_t cursor_ = 0;
    std::uint64_t index_ = 0;
    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
};

class RawSource final : public FrameSource {
public:
    RawSource(const fs::path& path, int height, int width, int channels)
        : in_(path, std::ios::binary), path_(path), height_(height), width_(width),
          channels_(channels) {
        if (height < 1 || width < 1 || (channels != 1 && channels != 3))
            throw std::invalid_argument("raw source: invalid dimensions " +
                                        std::to_string(height) + "x" + std::to_string(width) +
                                        "x" + std::to_string(channels));
        if (!in_)
            throw std::runtime_error(path.string() + ": cannot open");
        frame_bytes_ = static_cast<std::size_t>(height) * width * channels;
        const auto size = fs::file_size(path);
        count_ = size / frame_bytes_; // a trailing partial frame errors on read
        buffer_.resize(frame_bytes_);
    }

    int width() const override { return width_; }
    int height() const override { return height_; }
    int channels() const override { return channels_; }
    std::optional<std::uint64_t> frame_count() const override { return count_; }

    bool next(Frame& out) override {
        in_.read(reinterpret_cast<char*>(buffer_.data()),
                 static_cast<std::streamsize>(frame_bytes_));
        const auto got = static_cast<std::size_t>(in_.gcount());
        if (got == 0)
            return false;
        if (got != frame_bytes_)
            throw StreamError(path_.string() + ": truncated frame " +
                              std::to_string(index_ + 1) + " (" + std::to_string(got) + " of " +
                              std::to_string(frame_bytes_) + " bytes)");
        out.resize(width_, height_, channels_);
        out.index = ++index_;
        widen_interleaved(buffer_.data(), out);
        return true;
    }

private:
    std::ifstream in_;
    fs::path path_;
    int height_;
    int width_;
    int channels_;
    std::size_t frame_bytes_ = 0;
    std::uint64_t count_ = 0;
    std::uint64_t index_ = 0;
    std::vector<std::uint8_t> buffer_;
};

class Y4mSource final : public FrameSource {
public:
    explicit Y4mSource(const fs::path& path) : in_(path, std::ios::binary), path_(path) {
        if (!in_)
            throw std::runtime_error(path.string() + ": cannot open");
        std::string line;
        if (!std::getline(in_, line) || line.rfind("YUV4MPEG2", 0) != 0)
            throw std::runtime_error(path.string() + ": not a YUV4MPEG2 stream");

        std::string chroma = "420"; // the format's implied default
        std::istringstream header(line);
        std::string tag;
        header >> tag; // signature
        try {
            while (header >> tag) {
                switch (tag[0]) {
                case 'W': width_ = std::stoi(tag.substr(1)); break;
                case 'H': height_ = std::stoi(tag.substr(1)); break;
                case 'C': chroma = tag.substr(1); break;
                default: break; // frame rate, interlacing and aspect are irrelevant here
                }
            }
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ": malformed stream header tag '" + tag +
                                     "'");
        }
        if (width_ < 1 || height_ < 1)
            throw std::runtime_error(path.string() + ": missing W/H in stream header");
        if (chroma == "444") {
            channels_ = 3;
        } else if (chroma == "mono") {
            channels_ = 1;
        } else {
            throw std::runtime_error(path.string() + ": unsupported chroma C" + chroma +
                                     "; use C444 or convert");
        }
        buffer_.resize(static_cast<std::size_t>(width_) * height_ * channels_);
    }

    int width() const override { return width_; }
    int height() const override { return height_; }
    int channels() const override { return channels_; }

    bool next(Frame& out) override {
        std::string line;
        if (!std::getline(in_, line))
            return false;
        if (line.rfind("FRAME", 0) != 0)
            throw StreamError(path_.string() + ": bad frame marker before frame " +
                              std::to_string(index_ + 1));
        in_.read(reinterpret_cast<char*>(buffer_.data()),
                 static_cast<std::streamsize>(buffer_.size()));
        if (static_cast<std::size_t>(in_.gcount()) != buffer_.size())
            throw StreamError(path_.string() + ": truncated frame " + std::to_string(index_ + 1));
        out.resize(width_, height_, channels_);
        out.index = ++index_;
        widen_planar(buffer_.data(), out);
        return true;
    }

private:
    std::ifstream in_;
    fs::path path_;
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::uint64_t index_ = 0;
    std::vector<std::uint8_t> buffer_;
};

} // namespace

SyntheticSource::SyntheticSource(int height, int width, int channels, std::uint64_t frames,
                                 std::uint64_t seed)
    : height_(height), width_(width), channels_(channels), frames_(frames),
      state_(seed ? seed : 0x9e3779b97f4a7c15ull) {
    if (height < 1 || width < 1 || (channels != 1 && channels != 3))
        throw std::invalid_argument("synthetic source: invalid dimensions");
}

bool SyntheticSource::next(Frame& out) {
    if (cursor_ >= frames_)
        return false;
    out.resize(width_, height_, channels_);
    out.index = ++cursor_;
    // splitmix64: fixed across platforms, one call per four samples
    float* dst = out.data.data();
    std::size_t n = out.data.size();
    std::size_t i = 0;
    while (i < n) {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        for (int b = 0; b < 4 && i < n; ++b, ++i) {
            dst[i] = static_cast<float>((z >> (b * 8)) & 0xff);
        }
    }
    return true;
}

struct PrefetchSource::Impl {
    std::unique_ptr<FrameSource> inner;
    int depth;
    std::mutex mutex;
    std::condition_variable can_push;
    std::condition_variable can_pop;
    std::deque<Frame> queue;
    bool done = false;
    std::exception_ptr error;
    std::thread reader;

    Impl(std::unique_ptr<FrameSource> src, int d) : inner(std::move(src)), depth(d) {
        reader = std::thread([this] { pump(); });
    }

    ~Impl() {
        {
            std::lock_guard lock(mutex);
            done = true;
            queue.clear();
        }
        can_push.notify_all();
        reader.join();
    }

    void pump() {
        try {
            Frame f;
            while (inner->next(f)) {
                std::unique_lock lock(mutex);
                can_push.wait(lock, [this] {
                    return done || queue.size() < static_cast<std::size_t>(depth);
                });
                if (done)
                    return;
                queue.push_back(std::move(f));
                can_pop.notify_one();
            }
        } catch (...) {
            std::lock_guard lock(mutex);
            error = std::current_exception();
        }
        {
            std::lock_guard lock(mutex);
            done = true;
        }
        can_pop.notify_all();
    }
};

PrefetchSource::PrefetchSource(std::unique_ptr<FrameSource> inner, int depth) {
    if (!inner)
        throw std::invalid_argument("PrefetchSource: null inner source");
    if (depth < 1)
        throw std::invalid_argument("PrefetchSource: depth must be >= 1");
    impl_ = std::make_unique<Impl>(std::move(inner), depth);
}

PrefetchSource::~PrefetchSource() = default;

int PrefetchSource::width() const { return impl_->inner->width(); }
int PrefetchSource::height() const { return impl_->inner->height(); }
int PrefetchSource::channels() const { return impl_->inner->channels(); }
std::optional<std::uint64_t> PrefetchSource::frame_count() const {
    return impl_->inner->frame_count();
}

bool PrefetchSource::next(Frame& out) {
    std::unique_lock lock(impl_->mutex);
    impl_->can_pop.wait(lock, [this] { return !impl_->queue.empty() || impl_->done; });
    if (!impl_->queue.empty()) {
        out = std::move(impl_->queue.front());
        impl_->queue.pop_front();
        impl_->can_push.notify_one();
        return true;
    }
    if (impl_->error)
        std::rethrow_exception(impl_->error);
    return false;
}

std::unique_ptr<FrameSource> open_source(const std::filesystem::path& path,
                                         const SourceOptions& options) {
    SourceFormat format = options.format;
    if (format == SourceFormat::auto_detect) {
        if (fs::is_directory(path))
            format = SourceFormat::image_dir;
        else if (path.extension() == ".y4m")
            format = SourceFormat::y4m;
        else
            format = SourceFormat::raw;
    }

    switch (format) {
    case SourceFormat::image_dir:
        if (!fs::is_directory(path))
            throw std::runtime_error(path.string() + ": not a directory");
        return std::make_unique<ImageDirSource>(path);
    case SourceFormat::y4m:
        if (!fs::is_regular_file(path))
            throw std::runtime_error(path.string() + ": no such file");
        return std::make_unique<Y4mSource>(path);
    case SourceFormat::raw:
        if (!fs::is_regular_file(path))
            throw std::runtime_error(path.string() + ": no such file");
        if (options.raw_height == 0 || options.raw_width == 0 || options.raw_channels == 0)
            throw std::invalid_argument(
                path.string() + ": raw input needs dimensions; pass --raw-dims AxBxC");
        return std::make_unique<RawSource>(path, options.raw_height, options.raw_width,
                                           options.raw_channels);
    default:
        throw std::invalid_argument("open_source: unknown format");
    }
}

} // namespace eccmap
