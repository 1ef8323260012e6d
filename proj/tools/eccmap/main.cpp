#include <cstdio>
#include <exception>

#include "CLI11.hpp"

#include "common.hpp"

using namespace eccmap::tool;

int main(int argc, char** argv) {
    CLI::App app{"eccmap - streaming eccentricity maps from image and video streams"};
    app.require_subcommand(1);

    RunConfig config;

    const auto add_param_flags = [&](CLI::App* sub) {
        sub->add_option("--alpha", config.alpha, "forgetting factor in (0,1)")
            ->capture_default_str();
        sub->add_option("--gamma", config.gamma, "variance floor (squared intensity)")
            ->capture_default_str();
        sub->add_option("--m", config.m, "Chebyshev multiplier")->capture_default_str();
        sub->add_option("--warmup", config.warmup,
                        "frames with suppressed foreground (default: ceil(1/alpha))");
    };
    const auto add_input_flags = [&](CLI::App* sub) {
        sub->add_option("--input", config.input, "frame source: directory, .y4m or raw file");
        sub->add_option("--format", config.format, "input format: auto|dir|raw|y4m")
            ->capture_default_str();
        sub->add_option("--raw-dims", config.raw_dims,
                        "frame shape AxBxC (height x width x channels) for raw/synthetic");
        sub->add_option("--prefetch", config.prefetch,
                        "read-ahead queue depth, 0 = read on the engine thread")
            ->capture_default_str();
    };

    CLI::App* process = app.add_subcommand("process", "convert a stream into map images");
    add_input_flags(process);
    add_param_flags(process);
    process->add_option("--maps", config.maps, "comma list of e,pos,neg,signed,fg")
        ->capture_default_str();
    process->add_option("--closing", config.closing,
                        "square closing radius applied to fg (0 = off)");
    process->add_flag("--float-dump", config.float_dump,
                      "also write lossless .eccm float dumps per selected map");
    process->add_option("--out", config.out, "output directory")->capture_default_str();
    process->add_option("--threads", config.threads, "worker threads, 0 = all cores")
        ->capture_default_str();

    CLI::App* eval = app.add_subcommand("eval", "score foreground masks against ground truth");
    eval->add_option("--pred", config.pred_dir, "directory of predicted masks")->required();
    eval->add_option("--truth", config.truth_dir, "directory of ground-truth masks")
        ->required();
    eval->add_option("--report", config.report, "also write key=value report to this path");

    CLI::App* bench = app.add_subcommand("bench", "time map generation without disk writes");
    add_input_flags(bench);
    add_param_flags(bench);
    bench->add_option("--synthetic", config.synthetic,
                      "benchmark a seeded noise stream of N frames (needs --raw-dims)");
    bench->add_option("--seed", config.seed, "seed for the synthetic stream")
        ->capture_default_str();
    bench->add_option("--maps", config.maps, "map selection (all five are always computed)")
        ->capture_default_str();
    bench->add_option("--closing", config.closing, "square closing radius (0 = off)");
    bench->add_option("--threads", config.threads, "worker threads, 0 = all cores")
        ->capture_default_str();
    bench->add_option("--repeat", config.repeat, "timing repetitions, median wins")
        ->capture_default_str();
    bench->add_option("--report", config.report, "write key=value report to this path");
    bench->add_flag("--float-dump", config.float_dump,
                    "after timing, dump all maps as .eccm into --out (untimed)");
    bench->add_option("--out", config.out, "output directory for --float-dump")
        ->capture_default_str();

    CLI::App* selftest =
        app.add_subcommand("selftest", "run randomized property checks on the math core");
    CLI::Option* seed_opt =
        selftest->add_option("--seed", config.seed, "seed (default: fresh random)");
    selftest->add_option("--trials", config.trials, "random sequences per property")
        ->capture_default_str();
    selftest
        ->add_flag("--inject-plain-distance", config.inject_plain_distance,
                   "negative control: break the reference distance")
        ->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    config.seed_given = seed_opt->count() > 0;

    try {
        if (app.got_subcommand(process))
            return run_process(config);
        if (app.got_subcommand(eval))
            return run_eval(config);
        if (app.got_subcommand(bench))
            return run_bench(config);
        return run_selftest(config);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
}
