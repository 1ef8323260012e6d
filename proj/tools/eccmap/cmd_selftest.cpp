#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "common.hpp"
#include "eccmap/eccentricity.hpp"

namespace eccmap::tool {

namespace {

// Local double-summation reference, independent of the library's batch
// form. The distance switch exists as a negative control: plain instead of
// squared Euclidean must make the equivalence check fail.
double batch_reference(const std::vector<std::vector<double>>& samples, std::size_t index,
                       bool squared) {
    double numerator = 0.0;
    double denominator = 0.0;
    const auto dist = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += (a[i] - b[i]) * (a[i] - b[i]);
        return squared ? s : std::sqrt(s);
    };
    for (const auto& s : samples)
        numerator += dist(samples[index], s);
    for (const auto& a : samples)
        for (const auto& b : samples)
            denominator += dist(a, b);
    return 2.0 * numerator / denominator;
}

struct PropertyFailure {
    std::string name;
    std::string detail;
};

using Rng = std::mt19937_64;

std::vector<std::vector<double>> random_sequence(Rng& rng, int min_len = 2, int max_len = 50) {
    std::uniform_int_distribution<int> length(min_len, max_len);
    std::uniform_int_distribution<int> dims(1, 3);
    std::uniform_real_distribution<double> value(0.0, 255.0);
    const int n = length(rng);
    const int d = dims(rng);
    std::vector<std::vector<double>> samples(n, std::vector<double>(d));
    for (auto& s : samples)
        for (auto& v : s)
            v = value(rng);
    return samples;
}

void check_oracle_equivalence(Rng& rng, int trials, bool squared) {
    for (int t = 0; t < trials; ++t) {
        const auto samples = random_sequence(rng);
        StreamState state;
        std::vector<std::vector<double>> prefix;
        for (const auto& x : samples) {
            prefix.push_back(x);
            const auto xi = update_infinite(state, x);
            if (prefix.size() < 2)
                continue;
            if (!xi.has_value())
                throw PropertyFailure{"ORACLE EQUIVALENCE", "recursion undefined at k=" +
                                                                std::to_string(prefix.size())};
            const double ref = batch_reference(prefix, prefix.size() - 1, squared);
            if (std::abs(*xi - ref) > 1e-9)
                throw PropertyFailure{
                    "ORACLE EQUIVALENCE",
                    "trial " + std::to_string(t) + " k=" + std::to_string(prefix.size()) +
                        ": recursive " + format_double(*xi) + " vs batch " +
                        format_double(ref)};
        }
    }
}

void check_sum_rule(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const auto samples = random_sequence(rng, 2, 25);
        double sum = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double xi = batch_reference(samples, i, true);
            if (xi < 0.0 || xi > 1.0 + 1e-12)
                throw PropertyFailure{"BOUNDS", "batch value " + format_double(xi)};
            sum += xi;
        }
        if (std::abs(sum - 2.0) > 1e-9)
            throw PropertyFailure{"SUM RULE", "sum " + format_double(sum)};
    }
}

void check_finite_bounds(Rng& rng, int streams) {
    const EccParams params = EccParams::defaults(0.05);
    std::uniform_real_distribution<double> value(0.0, 255.0);
    for (int s = 0; s < streams; ++s) {
        StreamState state;
        std::vector<double> x(1 + static_cast<int>(rng() % 3));
        for (int k = 0; k < 100; ++k) {
            for (auto& v : x)
                v = value(rng);
            update_finite(state, x, params);
            const EccValues v = evaluate_finite(state, x, params);
            if (!std::isfinite(v.eps) || !std::isfinite(v.eps_signed))
                throw PropertyFailure{"BOUNDS", "non-finite eccentricity"};
            if (v.eps < 0.0 || v.eps > 1.0)
                throw PropertyFailure{"BOUNDS", "eps " + format_double(v.eps)};
            if (v.eps_signed < 0.0 || v.eps_signed > 1.0)
                throw PropertyFailure{"BOUNDS", "signed " + format_double(v.eps_signed)};
            if (v.eps_pos * v.eps_neg != 0.0)
                throw PropertyFailure{"EXCLUSIVITY",
                                      "pos " + format_double(v.eps_pos) + " neg " +
                                          format_double(v.eps_neg)};
        }
    }
}

void check_weight_sum(Rng& rng) {
    std::uniform_real_distribution<double> alpha_dist(0.02, 0.6);
    std::uniform_real_distribution<double> value(0.0, 255.0);
    for (int t = 0; t < 50; ++t) {
        const double alpha = alpha_dist(rng);
        EccParams p = EccParams::defaults(0.05);
        p.alpha = alpha;
        const int n = 5 + static_cast<int>(rng() % 40);

        double wsum = 0.0;
        for (int j = 0; j < n; ++j)
            wsum += alpha * std::pow(1.0 - alpha, j);
        if (std::abs(wsum - (1.0 - std::pow(1.0 - alpha, n))) > 1e-12)
            throw PropertyFailure{"WEIGHT SUM", "geometric sum mismatch"};

        std::vector<double> inputs(n, value(rng));
        inputs.back() = value(rng);
        StreamState state;
        for (double x : inputs)
            update_finite(state, std::span{&x, 1}, p);

        double expected = std::pow(1.0 - alpha, n - 1) * inputs[0];
        for (int i = 2; i <= n; ++i)
            expected += alpha * std::pow(1.0 - alpha, n - i) * inputs[i - 1];
        if (std::abs(state.mean[0] - expected) > 1e-12 * std::max(1.0, std::abs(expected)))
            throw PropertyFailure{"WEIGHT SUM",
                                  "mean " + format_double(state.mean[0]) + " vs explicit " +
                                      format_double(expected)};
    }
}

void check_fixed_point(Rng& rng) {
    const EccParams params = EccParams::defaults(0.05);
    std::uniform_real_distribution<double> value(0.0, 255.0);
    for (int t = 0; t < 20; ++t) {
        const double c = value(rng);
        StreamState state;
        for (int k = 0; k < 50; ++k) {
            update_finite(state, std::span{&c, 1}, params);
            if (k >= 1 && evaluate_finite(state, std::span{&c, 1}, params).eps != 0.0)
                throw PropertyFailure{"FIXED POINT", "constant stream produced nonzero eps"};
        }
        if (state.mean[0] != c || state.variance != 0.0)
            throw PropertyFailure{"FIXED POINT", "state drifted on constant stream"};
    }
}

void check_scale_covariance(Rng& rng) {
    EccParams params = EccParams::defaults(0.05);
    params.gamma = 0.0;
    const double threshold = anomaly_threshold_finite(params);
    std::uniform_real_distribution<double> value(0.0, 30.0);
    std::uniform_real_distribution<double> scale_dist(0.1, 20.0);
    for (int t = 0; t < 20; ++t) {
        const double scale = scale_dist(rng);
        StreamState a, b;
        for (int k = 0; k < 200; ++k) {
            const double x = value(rng);
            const double xs = x * scale;
            update_finite(a, std::span{&x, 1}, params);
            update_finite(b, std::span{&xs, 1}, params);
            const double xi_a = eccentricity_finite(a, std::span{&x, 1}, params);
            const double xi_b = eccentricity_finite(b, std::span{&xs, 1}, params);
            if (std::abs(xi_a - xi_b) > 1e-9)
                throw PropertyFailure{"SCALE COVARIANCE",
                                      "xi " + format_double(xi_a) + " vs scaled " +
                                          format_double(xi_b)};
            if (std::abs(xi_a - threshold) > 1e-9 &&
                (xi_a > threshold) != (xi_b > threshold))
                throw PropertyFailure{"SCALE COVARIANCE", "anomaly decision flipped"};
        }
    }
}

} // namespace

int run_selftest(const RunConfig& config) {
    std::uint64_t seed = config.seed;
    if (!config.seed_given)
        seed = std::random_device{}();
    std::printf("selftest seed: %llu\n", static_cast<unsigned long long>(seed));
    const int trials = config.trials;
    if (trials < 1)
        throw UsageError("--trials must be >= 1");

    const struct {
        const char* name;
        void (*run)(Rng&, const RunConfig&);
    } properties[] = {
        {"ORACLE EQUIVALENCE",
         [](Rng& rng, const RunConfig& c) {
             check_oracle_equivalence(rng, c.trials, !c.inject_plain_distance);
         }},
        {"SUM RULE", [](Rng& rng, const RunConfig& c) { check_sum_rule(rng, c.trials / 2); }},
        {"BOUNDS + EXCLUSIVITY",
         [](Rng& rng, const RunConfig&) { check_finite_bounds(rng, 200); }},
        {"WEIGHT SUM", [](Rng& rng, const RunConfig&) { check_weight_sum(rng); }},
        {"FIXED POINT", [](Rng& rng, const RunConfig&) { check_fixed_point(rng); }},
        {"SCALE COVARIANCE", [](Rng& rng, const RunConfig&) { check_scale_covariance(rng); }},
    };

    bool failed = false;
    for (const auto& property : properties) {
        Rng rng(seed); // each property gets the same reproducible stream
        try {
            property.run(rng, config);
            std::printf("ok   %s\n", property.name);
        } catch (const PropertyFailure& f) {
            failed = true;
            std::printf("FAIL %s: %s (reproduce with --seed %llu)\n", f.name.c_str(),
                        f.detail.c_str(), static_cast<unsigned long long>(seed));
        }
    }
    return failed ? kExitSelftest : kExitOk;
}

} // namespace eccmap::tool
