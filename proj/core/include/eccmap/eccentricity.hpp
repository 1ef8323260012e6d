#ifndef ECCMAP_ECCENTRICITY_HPP
#define ECCMAP_ECCENTRICITY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eccmap/params.hpp"

namespace eccmap {

/// Running statistics of one data stream: channel means, a scalar variance
/// and the number of samples seen. The first sample initializes the state
/// directly (mean = sample, variance = 0); the recursions apply from the
/// second sample on.
struct StreamState {
    std::vector<double> mean;
    double variance = 0.0;
    std::uint64_t count = 0;
};

/// Eccentricity of one sample split into its derived quantities.
/// Exactly one of eps_pos / eps_neg is nonzero, their sum is eps, and
/// eps_signed recombines them around the neutral value 0.5.
struct EccValues {
    double xi = 0.0;
    double eps = 0.0;
    double eps_pos = 0.0;
    double eps_neg = 0.0;
    double eps_signed = 0.5;
};

struct EccDecomposition {
    double positive = 0.0;
    double negative = 0.0;
    double signed_value = 0.5;
};

namespace detail {

// Shared per-sample arithmetic. The grid engine runs these same expressions
// per pixel, which keeps the bulk path bit-identical to the scalar path.

// Increment form of (1-alpha)*mu + alpha*x. Algebraically identical, but
// exact on constant streams: x == mu leaves the mean bit-identical, which
// keeps repeated frames at eccentricity zero with no rounding residue.
inline double mean_step(double mu, double x, double alpha) {
    return mu + alpha * (x - mu);
}

inline double variance_step(double var, double dev2, double alpha) {
    return (1.0 - alpha) * var + (alpha / (1.0 - alpha)) * dev2;
}

// dev2 = squared distance between the sample and the post-update mean.
// When dev2 is zero the ratio is taken as zero, which is the limit value
// and keeps a gamma of zero well defined on constant streams.
inline double xi_step(double dev2, double var, double alpha, double gamma) {
    const double q = std::max(var, gamma);
    return dev2 > 0.0 ? alpha + alpha * (dev2 / q) : alpha;
}

inline double eps_from_xi(double xi, double alpha) {
    return std::min((xi - alpha) * (1.0 / (1.0 - alpha)), 1.0);
}

} // namespace detail

/// Direct double-summation form of eccentricity over a full sample set,
/// using squared Euclidean distance. This is the slow reference the
/// recursive form is checked against; values over all indices sum to 2.
/// Throws if fewer than two samples are given, if dimensions are ragged,
/// or if all samples are identical (zero pairwise-distance sum).
double batch_eccentricity(const std::vector<std::vector<double>>& samples, std::size_t index);

/// Infinite-memory update: advances mean (k-1)/k weighting, then variance,
/// then evaluates xi_k = 1/k + |mu_k - x_k|^2 / (k sigma_k^2).
/// Returns std::nullopt while xi is undefined (k < 2 or zero variance).
std::optional<double> update_infinite(StreamState& state, std::span<const double> x);

/// Finite-memory update with constant forgetting factor: mean first, then
/// variance using the post-update mean. Total after initialization.
void update_finite(StreamState& state, std::span<const double> x, const EccParams& params);

/// Finite-memory eccentricity of x against a state that has already been
/// updated with x. The variance floor gamma removes the singularity, so the
/// result is always in [alpha, 1].
double eccentricity_finite(const StreamState& state, std::span<const double> x,
                           const EccParams& params);

/// Rescales xi from [alpha, 1] to [0, 1]. Throws if xi < alpha, which
/// indicates a caller bug (xi never drops below alpha).
double normalize_eccentricity(double xi, const EccParams& params);

/// Splits a normalized eccentricity into positive/negative components by
/// comparing |x|^2 against |mean|^2 (ties go to the positive branch) and
/// recombines them into the signed measure 0.5 + (pos - neg)/2.
EccDecomposition decompose_eccentricity(double eps, std::span<const double> x,
                                        std::span<const double> mean);

/// Convenience: xi, eps and the decomposition for a post-update state.
EccValues evaluate_finite(const StreamState& state, std::span<const double> x,
                          const EccParams& params);

/// Chebyshev anomaly cutoff in xi units, infinite-memory form: (m^2+1)/(2k).
double anomaly_threshold_infinite(double m, std::uint64_t k);

/// Chebyshev anomaly cutoff in xi units, finite-memory form: alpha(m^2+1)/2.
double anomaly_threshold_finite(const EccParams& params);

/// The same finite-memory cutoff expressed in normalized (eps) units:
/// alpha(m^2-1) / (2(1-alpha)).
double anomaly_threshold_finite_normalized(const EccParams& params);

} // namespace eccmap

#endif
