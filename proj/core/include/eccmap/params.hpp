#ifndef ECCMAP_PARAMS_HPP
#define ECCMAP_PARAMS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace eccmap {

/// Width of the moving window implied by a forgetting factor: ceil(1/alpha).
/// Also used as the default warm-up length before foreground masks go live.
inline int effective_window(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("effective_window: alpha must be in (0,1)");
    // Nudge below the true quotient so exactly representable reciprocals
    // (0.5 -> 2) do not round up to the next integer.
    return static_cast<int>(std::ceil(1.0 / alpha - 1e-9));
}

/// Parameters of the finite-memory eccentricity recursion.
///
/// alpha  - forgetting factor, weight of the newest sample, in (0,1)
/// gamma  - variance floor in squared-intensity units; suppresses noise
///          blow-ups when a stream is nearly constant
/// m      - Chebyshev multiplier for the anomaly threshold
/// warmup - number of leading frames during which foreground masks are
///          suppressed while the statistics settle
struct EccParams {
    double alpha = 0.05;
    double gamma = 10.0;
    double m = 3.0;
    int warmup = 20;

    void validate() const {
        if (!(alpha > 0.0) || !(alpha < 1.0))
            throw std::invalid_argument("EccParams: alpha must be in (0,1), got " +
                                        std::to_string(alpha));
        if (!(gamma >= 0.0))
            throw std::invalid_argument("EccParams: gamma must be >= 0");
        if (!(m > 0.0))
            throw std::invalid_argument("EccParams: m must be > 0");
        if (warmup < 0)
            throw std::invalid_argument("EccParams: warmup must be >= 0");
    }

    /// Defaults with the warm-up length derived from alpha.
    static EccParams defaults(double alpha = 0.05, double gamma = 10.0, double m = 3.0) {
        EccParams p;
        p.alpha = alpha;
        p.gamma = gamma;
        p.m = m;
        p.warmup = effective_window(alpha);
        p.validate();
        return p;
    }
};

} // namespace eccmap

#endif
