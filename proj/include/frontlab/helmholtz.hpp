#pragma once

#include <cmath>
#include <vector>

#include "frontlab/core.hpp"

/* Screened-Poisson kernel G(xi) = exp(-|xi|/L) / (2L) and the nonlocal
   potential u = G * rhs on [-alpha, alpha], where rhs is extended by
   constants beyond the interval. The convolution is evaluated by a two-pass
   exponential recursion that is exact for piecewise-linear rhs, and the
   extension tails are added in closed form. u' comes from the same
   accumulators analytically, never from finite differences. */

namespace frontlab {

struct KernelSpec {
    double lambda = 1.0;
};

inline double kernel_eval(const KernelSpec& k, double xi) {
    return std::exp(-std::fabs(xi) / k.lambda) / (2.0 * k.lambda);
}

struct PotentialField {
    Grid1D grid;
    std::vector<double> u;
    std::vector<double> du;
};

inline PotentialField convolve_extended(const KernelSpec& k, const Grid1D& grid,
                                        const std::vector<double>& rhs, double left_value,
                                        double right_value) {
    const double L = k.lambda;
    if (!(L > 0.0)) throw invalid_config("kernel needs lambda > 0");
    if (rhs.size() != static_cast<std::size_t>(grid.n) + 1)
        throw invalid_config("rhs length does not match grid");
    const int n = grid.n;
    const double h = grid.h();
    const double q = h / L;
    const double E = std::exp(-q);
    const double om = -std::expm1(-q);  // 1 - E without cancellation
    // Trapezoid-exact weights for the exponential kernel on one cell:
    // near weight wc multiplies the sample at the evaluation end, far
    // weight wp the sample one cell away. wp + wc = L (1 - E), which makes
    // constant input reproduce exactly.
    const double wp = L * (om * (1.0 + L / h) - 1.0);
    const double wc = L * (1.0 - (L / h) * om);

    std::vector<double> A(n + 1, 0.0), B(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) A[i] = E * A[i - 1] + wp * rhs[i - 1] + wc * rhs[i];
    for (int i = n - 1; i >= 0; --i) B[i] = E * B[i + 1] + wc * rhs[i] + wp * rhs[i + 1];

    PotentialField f;
    f.grid = grid;
    f.u.resize(n + 1);
    f.du.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double el = std::exp(-(grid.xi(i) + grid.alpha) / L);
        const double er = std::exp(-(grid.alpha - grid.xi(i)) / L);
        f.u[i] = (A[i] + B[i]) / (2.0 * L) + 0.5 * left_value * el + 0.5 * right_value * er;
        f.du[i] = (B[i] - A[i]) / (2.0 * L * L) - left_value * el / (2.0 * L) +
                  right_value * er / (2.0 * L);
    }
    return f;
}

/* Direct O(n^2) trapezoid evaluation with the same analytic tails; kept as
   an oracle for the recursion. */
inline PotentialField convolve_direct(const KernelSpec& k, const Grid1D& grid,
                                      const std::vector<double>& rhs, double left_value,
                                      double right_value) {
    const double L = k.lambda;
    const int n = grid.n;
    const double h = grid.h();
    PotentialField f;
    f.grid = grid;
    f.u.resize(n + 1);
    f.du.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        double s = 0.0, sd = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double w = (j == 0 || j == n) ? 0.5 * h : h;
            const double d = grid.xi(i) - grid.xi(j);
            const double g = kernel_eval(k, d);
            s += w * g * rhs[j];
            // The derivative integrand jumps at d = 0; the two half-cell
            // endpoint contributions there cancel exactly.
            if (j != i) sd += w * ((d > 0.0) ? -g / L : g / L) * rhs[j];
        }
        const double el = std::exp(-(grid.xi(i) + grid.alpha) / L);
        const double er = std::exp(-(grid.alpha - grid.xi(i)) / L);
        f.u[i] = s + 0.5 * left_value * el + 0.5 * right_value * er;
        f.du[i] = sd - left_value * el / (2.0 * L) + right_value * er / (2.0 * L);
    }
    return f;
}

inline std::vector<double> central_derivative(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
    if (n >= 3) {
        d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
        d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    }
    return d;
}

/* u = G * (a phibar + (b/2) phibar'^2), with the profile extended by 1 on
   the left and 0 on the right, so the extension carries rhs values a and 0
   and zero derivative. */
inline PotentialField potential_from_profile(const ModelParams& p, const WaveProfile& prof) {
    validate_params(p, Mode::nonlocal);
    const double h = prof.grid.h();
    std::vector<double> dphi = central_derivative(prof.phi, h);
    std::vector<double> rhs(prof.phi.size());
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = p.a * prof.phi[i] + 0.5 * p.b * dphi[i] * dphi[i];
    return convolve_extended(KernelSpec{p.lambda}, prof.grid, rhs, p.a, 0.0);
}

inline std::vector<double> velocity(const PotentialField& f) {
    std::vector<double> v(f.du.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = -f.du[i];
    return v;
}

struct PotentialBoundsCheck {
    double u_max = 0.0;
    double u_bound = 0.0;   // a + (b/4L) ||phi'||_2^2
    double du_max = 0.0;
    double du_bound = 0.0;  // ||u||_inf / L
    bool ok = false;
};

inline PotentialBoundsCheck check_potential_bounds(const ModelParams& p, const WaveProfile& prof,
                                                   const PotentialField& f, double tol = 1e-8) {
    PotentialBoundsCheck c;
    const double h = prof.grid.h();
    std::vector<double> dphi = central_derivative(prof.phi, h);
    double l2 = 0.0;
    for (double d : dphi) l2 += d * d * h;
    for (double u : f.u) c.u_max = std::max(c.u_max, std::fabs(u));
    for (double d : f.du) c.du_max = std::max(c.du_max, std::fabs(d));
    c.u_bound = p.a + p.b / (4.0 * p.lambda) * l2;
    c.du_bound = c.u_max / p.lambda;
    c.ok = (c.u_max <= c.u_bound + tol) && (c.du_max <= c.du_bound + tol);
    return c;
}

}  // namespace frontlab
