// Integration checks that drive the installed command line tool end to end:
// exit codes, output layout, determinism across thread counts, and the
// selftest negative control. Invoked with the tool path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "eccmap/pnm.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;
std::string tool;
fs::path work;

void check(bool ok, const std::string& what) {
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok)
        ++failures;
}

int run(const std::string& args) {
    const std::string cmd = tool + " " + args + " >" + (work / "stdout.txt").string() +
                            " 2>" + (work / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string last_stdout() {
    std::ifstream in(work / "stdout.txt");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_frames(const fs::path& dir, int frames, int width, int height,
                  unsigned seed) {
    fs::create_directories(dir);
    std::mt19937 rng(seed);
    for (int i = 1; i <= frames; ++i) {
        std::vector<std::uint8_t> rgb(static_cast<std::size_t>(width) * height * 3);
        for (auto& v : rgb)
            v = static_cast<std::uint8_t>(rng() % 256);
        char name[16];
        std::snprintf(name, sizeof(name), "%06d.ppm", i);
        eccmap::write_ppm(dir / name, rgb, width, height);
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <eccmap-binary>\n", argv[0]);
        return 1;
    }
    tool = argv[1];
    work = fs::temp_directory_path() /
           ("eccmap_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(work);

    // --- usage errors fail fast with exit 2 and write nothing ---
    check(run("process --alpha 1.5 --input nowhere --out " + (work / "no").string()) == 2,
          "alpha out of range exits 2");
    check(!fs::exists(work / "no"), "usage error creates no output directory");
    check(run("process --input nowhere --maps bogus --out " + (work / "no").string()) == 2,
          "unknown map kind exits 2");
    check(run("bogus-subcommand") == 2, "unknown subcommand exits 2");
    check(run("--help") == 0, "help exits 0");

    // --- missing input is a runtime error ---
    check(run("process --input " + (work / "missing").string()) == 1,
          "missing input exits 1");

    // --- process writes one PGM per frame per selected map ---
    const fs::path frames = work / "frames";
    write_frames(frames, 6, 8, 5, 1234);
    const fs::path out = work / "out";
    check(run("process --input " + frames.string() + " --maps e,fg --out " + out.string()) ==
              0,
          "process exits 0");
    bool layout = true;
    for (int i = 1; i <= 6; ++i) {
        char name[16];
        std::snprintf(name, sizeof(name), "%06d.pgm", i);
        layout = layout && fs::exists(out / "e" / name) && fs::exists(out / "fg" / name);
    }
    check(layout, "e/ and fg/ hold one image per input frame");
    check(!fs::exists(out / "pos"), "unselected maps are not written");
    check(last_stdout().find("6 frames") != std::string::npos,
          "summary line reports the frame count");

    // --- identical frames give a neutral signed map ---
    const fs::path still = work / "still";
    {
        fs::create_directories(still);
        std::vector<std::uint8_t> rgb(4 * 4 * 3, 77);
        eccmap::write_ppm(still / "000001.ppm", rgb, 4, 4);
        eccmap::write_ppm(still / "000002.ppm", rgb, 4, 4);
    }
    const fs::path still_out = work / "still_out";
    check(run("process --input " + still.string() + " --maps signed --out " +
              still_out.string()) == 0,
          "process still pair exits 0");
    {
        const eccmap::ImageU8 img = eccmap::read_pnm(still_out / "signed" / "000002.pgm");
        bool neutral = true;
        for (auto v : img.pixels)
            neutral = neutral && v == 128;
        check(neutral, "second signed map is all 128");
    }

    // --- determinism: different thread counts, identical bytes ---
    const fs::path t1 = work / "t1", t2 = work / "t2";
    check(run("process --input " + frames.string() + " --threads 1 --float-dump --out " +
              t1.string()) == 0,
          "process with one thread");
    check(run("process --input " + frames.string() + " --threads 4 --float-dump --out " +
              t2.string()) == 0,
          "process with four threads");
    bool same = true;
    for (const char* kind : {"e", "pos", "neg", "signed", "fg"}) {
        same = same && slurp(t1 / (std::string(kind) + ".eccm")) ==
                           slurp(t2 / (std::string(kind) + ".eccm"));
        for (int i = 1; i <= 6; ++i) {
            char name[16];
            std::snprintf(name, sizeof(name), "%06d.pgm", i);
            same = same && slurp(t1 / kind / name) == slurp(t2 / kind / name);
        }
    }
    check(same, "outputs are bit-identical across thread counts");

    // --- eval: identical dirs score a perfect F1 ---
    const fs::path report = work / "report.txt";
    check(run("eval --pred " + (t1 / "fg").string() + " --truth " + (t1 / "fg").string() +
              " --report " + report.string()) == 0,
          "eval of identical directories exits 0");
    {
        std::ifstream in(report);
        std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
        check(text.find("acc=1") != std::string::npos, "report shows perfect accuracy");
    }
    fs::create_directories(work / "emptydir");
    check(run("eval --pred " + (work / "emptydir").string() + " --truth " +
              (t1 / "fg").string()) == 1,
          "eval with no pairs exits 1");

    // --- eval rejects mismatched mask sizes ---
    const fs::path big = work / "big";
    write_frames(big, 1, 9, 9, 5);
    {
        const fs::path bigmask = work / "bigmask";
        fs::create_directories(bigmask);
        std::vector<std::uint8_t> gray(9 * 9, 255);
        eccmap::write_pgm(bigmask / "000001.pgm", gray, 9, 9);
        check(run("eval --pred " + (t1 / "fg").string() + " --truth " + bigmask.string()) ==
                  1,
              "dimension mismatch exits 1");
    }

    // --- bench on a tiny synthetic stream, with a report ---
    check(run("bench --synthetic 20 --raw-dims 16x16x3 --seed 5 --repeat 2 --report " +
              (work / "bench.txt").string()) == 0,
          "bench exits 0");
    {
        std::ifstream in(work / "bench.txt");
        std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
        check(text.find("frames=20") != std::string::npos, "bench report lists frames");
        check(text.find("fps=") != std::string::npos, "bench report lists fps");
    }
    check(run("bench --synthetic 0 --raw-dims 16x16x3") == 2,
          "bench without frames exits 2");
    check(run("bench --synthetic 5 --raw-dims 16x16x3 --maps ''") == 2,
          "bench with empty map selection exits 2");

    // --- selftest: pass, reproducibility, negative control ---
    check(run("selftest --seed 11 --trials 60") == 0, "selftest passes");
    const std::string first = last_stdout();
    check(run("selftest --seed 11 --trials 60") == 0, "selftest repeats");
    check(last_stdout() == first, "fixed seed reproduces identical output");
    check(run("selftest --seed 11 --trials 40 --inject-plain-distance") == 3,
          "injected wrong distance fails with exit 3");
    check(last_stdout().find("ORACLE EQUIVALENCE") != std::string::npos,
          "failure names the violated invariant");

    fs::remove_all(work);
    if (failures > 0) {
        std::printf("%d failures\n", failures);
        return 1;
    }
    std::printf("all cli checks passed\n");
    return 0;
}
