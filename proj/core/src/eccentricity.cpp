#include "eccmap/eccentricity.hpp"

#include <cmath>
#include <stdexcept>

namespace eccmap {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double squared_norm(std::span<const double> v) {
    double s = 0.0;
    for (double c : v)
        s += c * c;
    return s;
}

void check_dims(const StreamState& state, std::span<const double> x) {
    if (state.count > 0 && state.mean.size() != x.size())
        throw std::invalid_argument("sample dimension does not match stream state");
}

} // namespace

double batch_eccentricity(const std::vector<std::vector<double>>& samples, std::size_t index) {
    const std::size_t k = samples.size();
    if (k < 2)
        throw std::invalid_argument("batch_eccentricity: need at least two samples");
    if (index >= k)
        throw std::invalid_argument("batch_eccentricity: index out of range");
    const std::size_t dim = samples[0].size();
    for (const auto& s : samples)
        if (s.size() != dim)
            throw std::invalid_argument("batch_eccentricity: ragged sample dimensions");

    double numerator = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        numerator += squared_distance(samples[index], samples[i]);

    double denominator = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            denominator += squared_distance(samples[i], samples[j]);

    if (!(denominator > 0.0))
        throw std::invalid_argument(
            "batch_eccentricity: zero pairwise-distance sum (all samples identical)");
    return 2.0 * numerator / denominator;
}

std::optional<double> update_infinite(StreamState& state, std::span<const double> x) {
    check_dims(state, x);
    state.count += 1;
    const auto k = state.count;
    if (k == 1) {
        state.mean.assign(x.begin(), x.end());
        state.variance = 0.0;
        return std::nullopt;
    }
    const double kd = static_cast<double>(k);
    // increment form of ((k-1)/k)*mu + x/k, exact on constant streams
    for (std::size_t i = 0; i < x.size(); ++i)
        state.mean[i] = state.mean[i] + (x[i] - state.mean[i]) / kd;

    const double dev2 = squared_distance(state.mean, x);
    state.variance = ((kd - 1.0) / kd) * state.variance + dev2 / (kd - 1.0);

    if (state.variance > 0.0)
        return 1.0 / kd + dev2 / (kd * state.variance);
    return std::nullopt;
}

void update_finite(StreamState& state, std::span<const double> x, const EccParams& params) {
    check_dims(state, x);
    state.count += 1;
    if (state.count == 1) {
        state.mean.assign(x.begin(), x.end());
        state.variance = 0.0;
        return;
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        state.mean[i] = detail::mean_step(state.mean[i], x[i], params.alpha);
    const double dev2 = squared_distance(state.mean, x);
    state.variance = detail::variance_step(state.variance, dev2, params.alpha);
}

double eccentricity_finite(const StreamState& state, std::span<const double> x,
                           const EccParams& params) {
    check_dims(state, x);
    const double dev2 = squared_distance(state.mean, x);
    return detail::xi_step(dev2, state.variance, params.alpha, params.gamma);
}

double normalize_eccentricity(double xi, const EccParams& params) {
    if (xi < params.alpha)
        throw std::invalid_argument("normalize_eccentricity: xi below alpha");
    return detail::eps_from_xi(xi, params.alpha);
}

EccDecomposition decompose_eccentricity(double eps, std::span<const double> x,
                                        std::span<const double> mean) {
    EccDecomposition d;
    if (squared_norm(x) >= squared_norm(mean)) {
        d.positive = eps;
        d.negative = 0.0;
    } else {
        d.positive = 0.0;
        d.negative = eps;
    }
    d.signed_value = 0.5 + (d.positive - d.negative) / 2.0;
    return d;
}

EccValues evaluate_finite(const StreamState& state, std::span<const double> x,
                          const EccParams& params) {
    EccValues v;
    v.xi = eccentricity_finite(state, x, params);
    v.eps = detail::eps_from_xi(v.xi, params.alpha);
    const EccDecomposition d = decompose_eccentricity(v.eps, x, state.mean);
    v.eps_pos = d.positive;
    v.eps_neg = d.negative;
    v.eps_signed = d.signed_value;
    return v;
}

double anomaly_threshold_infinite(double m, std::uint64_t k) {
    if (k < 1)
        throw std::invalid_argument("anomaly_threshold_infinite: k must be >= 1");
    return (m * m + 1.0) / (2.0 * static_cast<double>(k));
}

double anomaly_threshold_finite(const EccParams& params) {
    return params.alpha * (params.m * params.m + 1.0) / 2.0;
}

double anomaly_threshold_finite_normalized(const EccParams& params) {
    return params.alpha * (params.m * params.m - 1.0) / (2.0 * (1.0 - params.alpha));
}

} // namespace eccmap
