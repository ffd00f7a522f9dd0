#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontlab {

/* Error hierarchy. Every failure mode the solvers can report is a named
   subclass so callers can map them to exit codes or retry policies. */
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct negative_parameter : error { using error::error; };
struct nonlocal_condition_violated : error { using error::error; };
struct odd_n : error { using error::error; };
struct too_coarse : error { using error::error; };
struct non_finite_value : error { using error::error; };
struct bracket_invalid : error { using error::error; };
struct bracket_failure : error { using error::error; };
struct inconclusive_region : error { using error::error; };
struct not_admissible : error { using error::error; };
struct newton_diverged : error { using error::error; };
struct picard_not_contracting : error { using error::error; };
struct sigma_stalled : error { using error::error; };
struct continuation_broken : error { using error::error; };
struct invalid_config : error { using error::error; };

enum class Mode { local, nonlocal };

/* Parameter triple (a, b, lambda). a and b are the dimensionless advection
   strengths, lambda the screening length of the kernel. The nonlocal solver
   additionally needs b/(2 lambda^2) < 1. */
struct ModelParams {
    double a = 0.0;
    double b = 0.0;
    double lambda = 0.0;

    bool nonlocal_admissible() const {
        return lambda > 0.0 && b < 2.0 * lambda * lambda;
    }
};

inline ModelParams validate_params(const ModelParams& p, Mode mode) {
    if (!(p.a >= 0.0) || !(p.b >= 0.0) || !(p.lambda >= 0.0))
        throw negative_parameter("parameters must satisfy a >= 0, b >= 0, lambda >= 0");
    if (mode == Mode::local) {
        if (p.lambda != 0.0)
            throw invalid_config("local mode requires lambda = 0");
    } else {
        if (!(p.lambda > 0.0))
            throw invalid_config("nonlocal mode requires lambda > 0");
        if (!(p.b < 2.0 * p.lambda * p.lambda))
            throw nonlocal_condition_violated(
                "b/(2 lambda^2) = " + std::to_string(p.b / (2.0 * p.lambda * p.lambda)) +
                " >= 1; the nonlocal solvability condition fails");
    }
    return p;
}

/* Uniform grid on [-alpha, alpha] with n intervals, n even so that node n/2
   sits exactly at xi = 0. h is always derived, never stored. */
struct Grid1D {
    double alpha = 0.0;
    int n = 0;

    double h() const { return 2.0 * alpha / n; }
    int mid() const { return n / 2; }
    // Anchors xi(0) = -alpha, xi(mid) = 0, xi(n) = +alpha are exact in
    // double arithmetic; interior spacing is uniform to roundoff.
    double xi(int i) const { return alpha * (2.0 * i / n - 1.0); }
};

inline Grid1D make_grid(double alpha, int n) {
    if (!(alpha > 0.0)) throw negative_parameter("grid half-width must be positive");
    if (n % 2 != 0) throw odd_n("grid interval count must be even, got " + std::to_string(n));
    if (n < 8) throw too_coarse("grid needs at least 8 intervals, got " + std::to_string(n));
    return Grid1D{alpha, n};
}

/* A point of the reduced phase plane, psi = phi'. */
struct PhaseState {
    double phi = 0.0;
    double psi = 0.0;
};

/* Sampled profile phi (optionally with potential u and velocity v = -u') on
   a uniform grid, plus the speed and truncation level it was computed at. */
struct WaveProfile {
    Grid1D grid;
    std::vector<double> phi;
    std::vector<double> u;  // empty when absent
    std::vector<double> v;  // empty when absent
    double sigma = 0.0;
    double theta = 0.0;     // 0 means untruncated
};

/* Closed-form lower/upper bounds on the critical speed, with a label saying
   which formula branch produced each value. */
struct SigmaBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::string lower_branch;
    std::string upper_branch;
};

inline bool profile_monotone(const WaveProfile& w, double tol = 1e-12) {
    for (std::size_t i = 1; i < w.phi.size(); ++i)
        if (w.phi[i] - w.phi[i - 1] > tol) return false;
    return true;
}

inline bool profile_in_box(const WaveProfile& w, double tol = 1e-12) {
    for (double v : w.phi)
        if (v < -tol || v > 1.0 + tol) return false;
    return true;
}

}  // namespace frontlab
