#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "frontlab/core.hpp"

/* Closed-form bounds on the critical speed sigma*(a, b) of the local model,
   plus the speed cap for the nonlocal solver and a pointwise subsolution
   certificate checker. */

namespace frontlab {

struct CubicRoot {
    double value = 0.0;     // root of a^3 - 32 a^2 + 256 a - 256 in (2, 16)
    double residual = 0.0;  // |p(value)|
};

inline double breakpoint_cubic(double a) {
    return ((a - 32.0) * a + 256.0) * a - 256.0;
}

/* Bisection for the breakpoint a* separating the parabola and linear upper
   branches at b = 0. The bracket signs are asserted, not assumed. */
inline CubicRoot a_star(double tol = 1e-12) {
    double lo = 2.0, hi = 16.0;
    if (!(breakpoint_cubic(lo) > 0.0) || !(breakpoint_cubic(hi) < 0.0))
        throw bracket_invalid("cubic bracket sign check failed on [2,16]");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (breakpoint_cubic(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    double v = 0.5 * (lo + hi);
    return CubicRoot{v, std::fabs(breakpoint_cubic(v))};
}

struct BranchValue {
    double value = 0.0;
    std::string branch;
};

/* Upper bound. b = 0 follows the four-piece curve with breakpoints at
   2, a*, 16; b > 0 uses the square-root cap, except that max{a,b} <= 2
   pins the value at exactly 2. Ties at breakpoints take the left branch. */
inline BranchValue sigma_upper(const ModelParams& p) {
    if (!(p.a >= 0.0) || !(p.b >= 0.0))
        throw negative_parameter("speed bounds need a >= 0 and b >= 0");
    const double a = p.a, b = p.b;
    if (b == 0.0) {
        if (a <= 2.0) return {2.0, "T2-fisher"};
        const double as = a_star().value;
        if (a <= as) return {std::sqrt((a * a + 4.0) / a), "T2-parabola"};
        if (a <= 16.0) return {2.0 + a / 8.0, "T2-linear"};
        return {std::sqrt(a), "T2-sqrt"};
    }
    if (std::max(a, b) <= 2.0) return {2.0, "T1"};
    double v = std::sqrt((std::sqrt(a * a + 8.0 * a + 4.0 * b + 16.0) + a + 4.0) / 2.0);
    return {std::max(2.0, v), "T3"};
}

/* Lower bound; never below 2. The b > 0 branch needs a^2 >= 4b, with the
   difference a - sqrt(a^2 - 4b) evaluated in cancellation-free form. */
inline BranchValue sigma_lower(const ModelParams& p) {
    if (!(p.a >= 0.0) || !(p.b >= 0.0))
        throw negative_parameter("speed bounds need a >= 0 and b >= 0");
    const double a = p.a, b = p.b;
    if (b == 0.0) {
        if (a <= 3.0 + 2.0 * std::sqrt(2.0)) return {2.0, "trivial-2"};
        return {(a - 1.0) / std::sqrt(a), "T2-manifold"};
    }
    if (a * a >= 4.0 * b) {
        const double s = 4.0 * b / (a + std::sqrt(a * a - 4.0 * b));  // = a - sqrt(a^2-4b)
        const double v = (2.0 * b - s) / std::sqrt(2.0 * b * s);
        if (v > 2.0) return {v, "T3-manifold"};
    }
    return {2.0, "trivial-2"};
}

inline SigmaBounds sigma_bounds(const ModelParams& p) {
    auto lo = sigma_lower(p);
    auto up = sigma_upper(p);
    return SigmaBounds{lo.value, up.value, lo.branch, up.branch};
}

/* Diagnostic ceiling for nonlocal solves:
   2 + a/L + (b/4L^2) (2 + a/L) / (1 - b/2L^2), valid for b/2L^2 < 1. */
inline double theorem3_speed_cap(const ModelParams& p) {
    validate_params(p, Mode::nonlocal);
    const double L = p.lambda;
    const double base = 2.0 + p.a / L;
    return base + (p.b / (4.0 * L * L)) * base / (1.0 - p.b / (2.0 * L * L));
}

struct SubsolutionCheck {
    bool ok = false;
    double worst_margin = 0.0;
    double phi_at_worst = 0.0;
};

/* Pointwise check of the strict subsolution inequality for the candidate
   S(phi) = c phi (1 - phi):

       S' < (sigma S - a S^2 - phi (1 - phi)) / (S (1 + b S^2))

   sampled at n_check Chebyshev points of (0, 1), which cluster where the
   margin degenerates. A true verdict certifies sigma is admissible. */
inline SubsolutionCheck verify_subsolution(const ModelParams& p, double sigma, double alpha_coef,
                                           int n_check = 1000) {
    if (p.lambda != 0.0) throw invalid_config("subsolution check is for the local model");
    if (n_check < 100) throw invalid_config("subsolution check needs at least 100 points");
    if (!(alpha_coef > 0.0)) throw invalid_config("subsolution coefficient must be positive");
    SubsolutionCheck out;
    out.ok = true;
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= n_check; ++j) {
        const double t = std::cos(std::numbers::pi * (2.0 * j - 1.0) / (2.0 * n_check));
        const double phi = 0.5 * (1.0 + t);  // Chebyshev nodes, endpoints excluded
        const double S = alpha_coef * phi * (1.0 - phi);
        const double dS = alpha_coef * (1.0 - 2.0 * phi);
        const double rhs =
            (sigma * S - p.a * S * S - phi * (1.0 - phi)) / (S * (1.0 + p.b * S * S));
        const double margin = rhs - dS;
        if (margin < out.worst_margin) {
            out.worst_margin = margin;
            out.phi_at_worst = phi;
        }
        if (!(margin > 0.0)) out.ok = false;
    }
    return out;
}

}  // namespace frontlab
