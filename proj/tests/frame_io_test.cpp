#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "eccmap/float_dump.hpp"
#include "eccmap/frame_source.hpp"
#include "eccmap/map_io.hpp"
#include "eccmap/pnm.hpp"
#include "eccmap/state_grid.hpp"

using namespace eccmap;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("eccmap_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_bytes(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("pgm round trip is bit exact") {
    TempDir tmp;
    std::mt19937 rng(5);
    std::vector<std::uint8_t> gray(24 * 16);
    for (auto& v : gray)
        v = static_cast<std::uint8_t>(rng() % 256);

    const auto path = tmp.path / "t.pgm";
    write_pgm(path, gray, 24, 16);
    const ImageU8 back = read_pnm(path);
    CHECK(back.width == 24);
    CHECK(back.height == 16);
    CHECK(back.channels == 1);
    CHECK(back.pixels == gray);
}

TEST_CASE("ppm round trip and header parsing with comments") {
    TempDir tmp;
    std::vector<std::uint8_t> rgb = {255, 0, 0, 0, 255, 0, 0, 0, 255, 9, 9, 9};
    const auto path = tmp.path / "t.ppm";
    write_ppm(path, rgb, 2, 2);
    CHECK(read_pnm(path).pixels == rgb);

    write_text(tmp.path / "c.pgm", "P5 # comment\n# another\n2 1\n255\nAB");
    const ImageU8 img = read_pnm(tmp.path / "c.pgm");
    CHECK(img.width == 2);
    CHECK(img.pixels == std::vector<std::uint8_t>{'A', 'B'});

    write_text(tmp.path / "bad.pgm", "P5\n2 1\n65535\nAB");
    CHECK_THROWS(read_pnm(tmp.path / "bad.pgm"));
    write_text(tmp.path / "trunc.pgm", "P5\n4 4\n255\nAB");
    CHECK_THROWS(read_pnm(tmp.path / "trunc.pgm"));
}

TEST_CASE("image directory source delivers frames in order") {
    TempDir tmp;
    for (int i = 1; i <= 5; ++i) {
        char name[16];
        std::snprintf(name, sizeof(name), "%06d.ppm", i);
        std::vector<std::uint8_t> rgb(2 * 2 * 3, static_cast<std::uint8_t>(i));
        write_ppm(tmp.path / name, rgb, 2, 2);
    }

    auto src = open_source(tmp.path);
    CHECK(src->width() == 2);
    CHECK(src->height() == 2);
    CHECK(src->channels() == 3);
    REQUIRE(src->frame_count().has_value());
    CHECK(*src->frame_count() == 5);

    Frame f;
    int n = 0;
    while (src->next(f)) {
        ++n;
        CHECK(f.index == static_cast<std::uint64_t>(n));
        CHECK(f.data[0] == static_cast<float>(n));
    }
    CHECK(n == 5);
}

TEST_CASE("empty directory is a clean end of stream") {
    TempDir tmp;
    auto src = open_source(tmp.path);
    Frame f;
    CHECK(!src->next(f));
    CHECK(*src->frame_count() == 0);
}

TEST_CASE("mixed dimensions in a directory are rejected") {
    TempDir tmp;
    write_ppm(tmp.path / "000001.ppm", std::vector<std::uint8_t>(12, 1), 2, 2);
    write_ppm(tmp.path / "000002.ppm", std::vector<std::uint8_t>(27, 2), 3, 3);
    CHECK_THROWS_AS(open_source(tmp.path), StreamError);
}

TEST_CASE("raw source needs dimensions and reports truncation") {
    TempDir tmp;
    const auto path = tmp.path / "stream.raw";

    SUBCASE("missing dims") {
        write_bytes(path, std::vector<std::uint8_t>(12, 0));
        CHECK_THROWS_WITH_AS(static_cast<void>(open_source(path)),
                             doctest::Contains("--raw-dims"), std::invalid_argument);
    }

    SUBCASE("exact frames then end") {
        std::vector<std::uint8_t> bytes(2 * 2 * 3 * 4); // 4 RGB frames of 2x2
        for (std::size_t i = 0; i < bytes.size(); ++i)
            bytes[i] = static_cast<std::uint8_t>(i);
        write_bytes(path, bytes);
        SourceOptions opt;
        opt.format = SourceFormat::raw;
        opt.raw_height = 2;
        opt.raw_width = 2;
        opt.raw_channels = 3;
        auto src = open_source(path, opt);
        CHECK(*src->frame_count() == 4);
        Frame f;
        int n = 0;
        while (src->next(f))
            ++n;
        CHECK(n == 4);
    }

    SUBCASE("truncated last frame names its index") {
        write_bytes(path, std::vector<std::uint8_t>(2 * 2 * 3 * 2 + 5, 1));
        SourceOptions opt;
        opt.format = SourceFormat::raw;
        opt.raw_height = 2;
        opt.raw_width = 2;
        opt.raw_channels = 3;
        auto src = open_source(path, opt);
        Frame f;
        CHECK(src->next(f));
        CHECK(src->next(f));
        CHECK_THROWS_WITH_AS(static_cast<void>(src->next(f)), doctest::Contains("frame 3"),
                             StreamError);
    }
}

TEST_CASE("y4m source accepts C444 and mono, rejects others") {
    TempDir tmp;

    SUBCASE("C444") {
        std::string data = "YUV4MPEG2 W2 H2 F25:1 Ip A1:1 C444\n";
        for (int k = 0; k < 3; ++k) {
            data += "FRAME\n";
            for (int i = 0; i < 12; ++i)
                data.push_back(static_cast<char>(k * 12 + i));
        }
        write_text(tmp.path / "v.y4m", data);
        auto src = open_source(tmp.path / "v.y4m");
        CHECK(src->channels() == 3);
        Frame f;
        int n = 0;
        while (src->next(f))
            ++n;
        CHECK(n == 3);
        // planar data maps straight onto channels
        CHECK(f.plane(0)[0] == static_cast<float>(2 * 12));
    }

    SUBCASE("mono") {
        std::string data = "YUV4MPEG2 W3 H2 Cmono\nFRAME\nABCDEF";
        write_text(tmp.path / "m.y4m", data);
        auto src = open_source(tmp.path / "m.y4m");
        CHECK(src->channels() == 1);
        Frame f;
        CHECK(src->next(f));
        CHECK(f.plane(0)[5] == static_cast<float>('F'));
        CHECK(!src->next(f));
    }

    SUBCASE("C420 is refused with advice") {
        write_text(tmp.path / "bad.y4m", "YUV4MPEG2 W2 H2 C420\n");
        CHECK_THROWS_WITH_AS(static_cast<void>(open_source(tmp.path / "bad.y4m")),
                             doctest::Contains("C444"), std::runtime_error);
    }

    SUBCASE("truncated frame") {
        write_text(tmp.path / "t.y4m", "YUV4MPEG2 W2 H2 Cmono\nFRAME\nAB");
        auto src = open_source(tmp.path / "t.y4m");
        Frame f;
        CHECK_THROWS_AS(static_cast<void>(src->next(f)), StreamError);
    }
}

TEST_CASE("a 633-frame source yields exactly 633 frames then a clean end") {
    TempDir tmp;
    const auto path = tmp.path / "long.raw";
    write_bytes(path, std::vector<std::uint8_t>(633, 200)); // 633 single-pixel frames
    SourceOptions opt;
    opt.format = SourceFormat::raw;
    opt.raw_height = 1;
    opt.raw_width = 1;
    opt.raw_channels = 1;
    auto src = open_source(path, opt);
    CHECK(*src->frame_count() == 633);
    Frame f;
    std::uint64_t n = 0;
    while (src->next(f))
        ++n;
    CHECK(n == 633);
    CHECK(!src->next(f));
}

TEST_CASE("synthetic source is deterministic for a fixed seed") {
    SyntheticSource a(4, 6, 3, 10, 42);
    SyntheticSource b(4, 6, 3, 10, 42);
    SyntheticSource c(4, 6, 3, 10, 43);
    Frame fa, fb, fc;
    bool any_diff = false;
    for (int k = 0; k < 10; ++k) {
        REQUIRE(a.next(fa));
        REQUIRE(b.next(fb));
        REQUIRE(c.next(fc));
        CHECK(fa.data == fb.data);
        any_diff = any_diff || fa.data != fc.data;
        for (float v : fa.data) {
            CHECK(v >= 0.0f);
            CHECK(v <= 255.0f);
        }
    }
    CHECK(!a.next(fa));
    CHECK(any_diff);
}

TEST_CASE("prefetch wrapper preserves order and propagates errors") {
    SUBCASE("order") {
        auto src = std::make_unique<SyntheticSource>(4, 6, 1, 50, 7);
        SyntheticSource ref(4, 6, 1, 50, 7);
        PrefetchSource pre(std::move(src), 4);
        Frame f, g;
        int n = 0;
        while (pre.next(f)) {
            REQUIRE(ref.next(g));
            REQUIRE(f.data == g.data);
            ++n;
        }
        CHECK(n == 50);
    }

    SUBCASE("error propagation") {
        TempDir tmp;
        write_bytes(tmp.path / "bad.raw", std::vector<std::uint8_t>(10, 1));
        SourceOptions opt;
        opt.format = SourceFormat::raw;
        opt.raw_height = 2;
        opt.raw_width = 2;
        opt.raw_channels = 1;
        PrefetchSource pre(open_source(tmp.path / "bad.raw", opt), 2);
        Frame f;
        CHECK(pre.next(f));
        CHECK(pre.next(f));
        CHECK_THROWS_AS(static_cast<void>(pre.next(f)), StreamError);
    }
}

TEST_CASE("map images quantize and round trip") {
    TempDir tmp;
    MapBundle bundle;
    bundle.resize(4, 3);
    bundle.frame_index = 1;

    SUBCASE("all-zero e map") {
        write_map_image(bundle, MapKind::e, tmp.path / "e.pgm");
        const ImageU8 img = read_pnm(tmp.path / "e.pgm");
        for (auto v : img.pixels)
            CHECK(v == 0);
    }

    SUBCASE("neutral signed map is all 128") {
        std::fill(bundle.e_signed.begin(), bundle.e_signed.end(), 0.5f);
        write_map_image(bundle, MapKind::signed_map, tmp.path / "s.pgm");
        const ImageU8 img = read_pnm(tmp.path / "s.pgm");
        for (auto v : img.pixels)
            CHECK(v == 128);
    }

    SUBCASE("fg uses only 0 and 255") {
        bundle.fg[0] = bundle.fg[5] = 1;
        write_map_image(bundle, MapKind::fg, tmp.path / "fg.pgm");
        const ImageU8 img = read_pnm(tmp.path / "fg.pgm");
        for (std::size_t i = 0; i < img.pixels.size(); ++i) {
            CHECK((img.pixels[i] == 0 || img.pixels[i] == 255));
            CHECK(img.pixels[i] == (bundle.fg[i] ? 255 : 0));
        }
    }

    SUBCASE("map written then reloaded matches quantize_map") {
        std::mt19937 rng(17);
        for (auto& v : bundle.e)
            v = static_cast<float>(rng() % 1001) / 1000.0f;
        write_map_image(bundle, MapKind::e, tmp.path / "r.pgm");
        CHECK(read_pnm(tmp.path / "r.pgm").pixels == quantize_map(bundle.e));
    }
}

TEST_CASE("float dump round trips bit-exactly") {
    TempDir tmp;
    const auto path = tmp.path / "maps.eccm";
    std::mt19937 rng(23);
    std::vector<std::vector<float>> rasters;
    {
        FloatDumpWriter writer(path);
        for (int k = 1; k <= 3; ++k) {
            std::vector<float> values(6 * 4);
            for (auto& v : values)
                v = static_cast<float>(rng()) / 1e6f;
            writer.append(values, 6, 4, static_cast<std::uint64_t>(k));
            rasters.push_back(std::move(values));
        }
    }

    FloatDumpReader reader(path);
    for (int k = 1; k <= 3; ++k) {
        auto rec = reader.next();
        REQUIRE(rec.has_value());
        CHECK(rec->version == kFloatDumpVersion);
        CHECK(rec->width == 6);
        CHECK(rec->height == 4);
        CHECK(rec->frame_index == static_cast<std::uint64_t>(k));
        CHECK(rec->values == rasters[static_cast<std::size_t>(k - 1)]);
    }
    CHECK(!reader.next().has_value());
}

TEST_CASE("truth mask loading") {
    TempDir tmp;

    SUBCASE("binary mask maps identically") {
        std::vector<std::uint8_t> gray{0, 255, 255, 0, 0, 255};
        write_pgm(tmp.path / "t.pgm", gray, 3, 2);
        const MaskImage mask = load_truth_mask(tmp.path / "t.pgm");
        CHECK(mask.width == 3);
        CHECK(mask.height == 2);
        CHECK(mask.pixels == std::vector<std::uint8_t>{0, 1, 1, 0, 0, 1});
    }

    SUBCASE("anti-aliased grays threshold at >127") {
        std::vector<std::uint8_t> gray{126, 127, 128, 200};
        write_pgm(tmp.path / "a.pgm", gray, 4, 1);
        CHECK(load_truth_mask(tmp.path / "a.pgm").pixels ==
              std::vector<std::uint8_t>{0, 0, 1, 1});
    }

    SUBCASE("color masks average the channels") {
        std::vector<std::uint8_t> rgb{255, 255, 255, 0, 0, 0};
        write_ppm(tmp.path / "c.ppm", rgb, 2, 1);
        CHECK(load_truth_mask(tmp.path / "c.ppm").pixels == std::vector<std::uint8_t>{1, 0});
    }
}
