#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "frontlab/bounds.hpp"
#include "frontlab/core.hpp"
#include "frontlab/helmholtz.hpp"
#include "frontlab/interp.hpp"
#include "frontlab/shooting.hpp"

/* Solver for the truncated nonlocal problem on [-alpha, alpha]:

       phi'' + sigma phi' + g(phi) u' phi' + g(phi) phi (1 - phi) = 0,
       phi(-alpha) = 1,  phi(alpha) = 0,  phi(0) = theta,

   with u the screened-Poisson potential of the profile. The pinning
   condition removes translation freedom and makes sigma an unknown: the
   inner Newton solves for (phi, sigma) jointly on a bordered tridiagonal
   system, a Picard loop relaxes u, and continuation drives theta down,
   alpha up, and lambda toward the local regime. */

namespace frontlab {

struct TruncationConfig {
    double theta = 0.1;       // pinning and cutoff level, in (0, 1/3)
    double alpha = 30.0;      // domain half-width
    double g_smoothing = 0.0; // ramp width of g; <= 0 selects min(theta, 1-theta)
};

/* C^1 cutoff: 0 below theta, 1 above theta + width, cubic smoothstep ramp
   between. Narrow default width keeps the cutoff local to the pinning
   level, so g tends to 1 pointwise as theta goes to 0. */
struct TruncationG {
    double theta = 0.1;
    double width = 0.1;
};

inline TruncationG make_truncation_g(const TruncationConfig& cfg) {
    double w = cfg.g_smoothing > 0.0 ? cfg.g_smoothing : std::min(cfg.theta, 1.0 - cfg.theta);
    return TruncationG{cfg.theta, w};
}

inline double g_eval(const TruncationG& g, double phi) {
    const double t = (phi - g.theta) / g.width;
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * (3.0 - 2.0 * t);
}

inline double g_deriv(const TruncationG& g, double phi) {
    const double t = (phi - g.theta) / g.width;
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 6.0 * t * (1.0 - t) / g.width;
}

struct IterationCounts {
    int newton = 0;         // bordered Newton iterations, total
    int picard = 0;         // potential relaxation cycles
    int sigma_updates = 0;  // sigma corrections (one per Newton iteration)
};

struct DiagnosticCheck {
    std::string name;
    double margin = 0.0;  // >= 0 means the inequality holds
    bool ok = false;
};

struct NonlocalSolveReport {
    WaveProfile profile;
    double sigma = 0.0;
    IterationCounts iterations;
    double energy_lhs = 0.0;  // (1 - b/2L^2) int phi'^2 + int g phi (1-phi)^2
    double energy_rhs = 0.0;  // 2 + a/L + theta/alpha
    std::vector<DiagnosticCheck> diagnostics;
    std::string warning;

    bool diagnostics_ok() const {
        for (const auto& d : diagnostics)
            if (!d.ok) return false;
        return true;
    }
};

inline void validate_truncation(const ModelParams& p, const TruncationConfig& cfg,
                                const Grid1D& grid) {
    validate_params(p, Mode::nonlocal);
    if (!(cfg.theta > 0.0 && cfg.theta < 1.0 / 3.0))
        throw invalid_config("truncation level must lie in (0, 1/3)");
    const double amin = std::max(-std::log(cfg.theta), 0.5 * p.lambda * std::log(3.0));
    if (!(cfg.alpha > amin))
        throw invalid_config("domain half-width " + std::to_string(cfg.alpha) +
                             " too small, needs > " + std::to_string(amin));
    if (std::fabs(grid.alpha - cfg.alpha) > 1e-12 * std::max(1.0, cfg.alpha))
        throw invalid_config("grid and truncation config disagree on alpha");
}

/* Discrete residual: second-order central differences at interior nodes,
   Dirichlet defects at the boundary rows. */
inline std::vector<double> residual([[maybe_unused]] const ModelParams& p,
                                    const TruncationConfig& cfg, const Grid1D& grid,
                                    const std::vector<double>& phi, const PotentialField& field,
                                    double sigma) {
    const int n = grid.n;
    const double h = grid.h();
    const TruncationG g = make_truncation_g(cfg);
    std::vector<double> r(n + 1);
    r[0] = phi[0] - 1.0;
    r[n] = phi[n];
    for (int i = 1; i < n; ++i) {
        const double dp = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
        const double dd = (phi[i - 1] - 2.0 * phi[i] + phi[i + 1]) / (h * h);
        const double gi = g_eval(g, phi[i]);
        r[i] = dd + sigma * dp + gi * field.du[i] * dp + gi * phi[i] * (1.0 - phi[i]);
    }
    return r;
}

namespace detail {

// Thomas algorithm; diagonals indexed by row, lo[0] and up[n] unused.
inline void solve_tridiagonal(const std::vector<double>& lo, const std::vector<double>& di,
                              const std::vector<double>& up, std::vector<double> rhs,
                              std::vector<double>& x) {
    const std::size_t n = di.size();
    std::vector<double> cp(n);
    cp[0] = up[0] / di[0];
    rhs[0] /= di[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = di[i] - lo[i] * cp[i - 1];
        cp[i] = up[i] / m;
        rhs[i] = (rhs[i] - lo[i] * rhs[i - 1]) / m;
    }
    x.resize(n);
    x[n - 1] = rhs[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = rhs[i] - cp[i] * x[i + 1];
}

struct JacobianBands {
    std::vector<double> lo, di, up;
};

inline JacobianBands jacobian_bands(const TruncationG& g, const Grid1D& grid,
                                    const std::vector<double>& phi,
                                    const PotentialField& field, double sigma) {
    const int n = grid.n;
    const double h = grid.h();
    JacobianBands J;
    J.lo.assign(n + 1, 0.0);
    J.di.assign(n + 1, 0.0);
    J.up.assign(n + 1, 0.0);
    J.di[0] = J.di[n] = 1.0;
    for (int i = 1; i < n; ++i) {
        const double dp = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
        const double gi = g_eval(g, phi[i]);
        const double dgi = g_deriv(g, phi[i]);
        const double adv = sigma + gi * field.du[i];
        J.lo[i] = 1.0 / (h * h) - adv / (2.0 * h);
        J.up[i] = 1.0 / (h * h) + adv / (2.0 * h);
        J.di[i] = -2.0 / (h * h) + dgi * field.du[i] * dp + dgi * phi[i] * (1.0 - phi[i]) +
                  gi * (1.0 - 2.0 * phi[i]);
    }
    return J;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

}  // namespace detail

struct NewtonResult {
    std::vector<double> phi;
    int iterations = 0;
};

/* Fixed-sigma damped Newton on the Dirichlet problem with frozen potential.
   Well conditioned only near a consistent solution: at a sigma far from the
   speed selected by the pinning, the problem's solution develops a boundary
   layer and cold starts are not expected to converge. */
inline NewtonResult newton_phi(const ModelParams& p, const TruncationConfig& cfg,
                               const Grid1D& grid, const PotentialField& field, double sigma,
                               const std::vector<double>& phi0, double tol = 1e-10,
                               int maxit = 50) {
    validate_truncation(p, cfg, grid);
    const TruncationG g = make_truncation_g(cfg);
    const int n = grid.n;
    std::vector<double> phi = phi0;
    phi[0] = 1.0;
    phi[n] = 0.0;
    std::vector<double> r = residual(p, cfg, grid, phi, field, sigma);
    std::vector<double> step, cand;
    int used = 0;
    for (int it = 0; it < maxit; ++it) {
        const double rn = detail::max_abs(r);
        if (!std::isfinite(rn)) throw newton_diverged("non-finite residual");
        if (rn < tol) return NewtonResult{phi, used};
        auto J = detail::jacobian_bands(g, grid, phi, field, sigma);
        std::vector<double> neg(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
        detail::solve_tridiagonal(J.lo, J.di, J.up, neg, step);
        double damp = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            cand = phi;
            for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += damp * step[i];
            std::vector<double> rc = residual(p, cfg, grid, cand, field, sigma);
            if (detail::max_abs(rc) < rn) {
                phi.swap(cand);
                r.swap(rc);
                accepted = true;
                break;
            }
            damp *= 0.5;
        }
        if (!accepted) throw newton_diverged("line search stalled at residual " +
                                             std::to_string(rn));
        ++used;
    }
    if (detail::max_abs(r) < tol) return NewtonResult{phi, used};
    throw newton_diverged("no convergence in " + std::to_string(maxit) + " iterations");
}

namespace detail {

struct BorderedState {
    std::vector<double> phi;
    double sigma = 0.0;
    int iterations = 0;
};

/* Newton on the pinned system: unknowns are the profile values and sigma,
   equations the interior rows plus phi(mid) = theta. The bordered linear
   solve needs two tridiagonal sweeps per iteration. */
inline BorderedState bordered_newton(const ModelParams& p, const TruncationConfig& cfg,
                                     const Grid1D& grid, const PotentialField& field,
                                     double sigma, std::vector<double> phi, double tol = 1e-11,
                                     int maxit = 80) {
    const TruncationG g = make_truncation_g(cfg);
    const int n = grid.n;
    const int mid = grid.mid();
    const double h = grid.h();
    phi[0] = 1.0;
    phi[n] = 0.0;

    auto full_norm = [&](const std::vector<double>& r, double rpin) {
        return std::max(max_abs(r), std::fabs(rpin));
    };

    std::vector<double> r = residual(p, cfg, grid, phi, field, sigma);
    double rpin = phi[mid] - cfg.theta;
    std::vector<double> y, z, csig(n + 1, 0.0);
    int used = 0;
    for (int it = 0; it < maxit; ++it) {
        const double rn = full_norm(r, rpin);
        if (!std::isfinite(rn)) throw newton_diverged("non-finite residual");
        if (rn < tol) return BorderedState{std::move(phi), sigma, used};
        auto J = jacobian_bands(g, grid, phi, field, sigma);
        for (int i = 1; i < n; ++i) csig[i] = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
        csig[0] = csig[n] = 0.0;
        std::vector<double> neg(r.size()), negc(csig.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            neg[i] = -r[i];
            negc[i] = -csig[i];
        }
        solve_tridiagonal(J.lo, J.di, J.up, neg, y);
        solve_tridiagonal(J.lo, J.di, J.up, negc, z);
        if (z[mid] == 0.0) throw newton_diverged("singular bordered system");
        const double dsig = (-rpin - y[mid]) / z[mid];
        double damp = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            std::vector<double> cand(phi.size());
            for (std::size_t i = 0; i < phi.size(); ++i)
                cand[i] = phi[i] + damp * (y[i] + dsig * z[i]);
            const double scand = sigma + damp * dsig;
            std::vector<double> rc = residual(p, cfg, grid, cand, field, scand);
            const double rpc = cand[mid] - cfg.theta;
            if (full_norm(rc, rpc) < rn) {
                phi.swap(cand);
                sigma = scand;
                r.swap(rc);
                rpin = rpc;
                accepted = true;
                break;
            }
            damp *= 0.5;
        }
        if (!accepted)
            throw newton_diverged("bordered line search stalled at residual " +
                                  std::to_string(rn));
        ++used;
    }
    throw newton_diverged("pinned Newton did not meet tolerance");
}

inline std::vector<double> tanh_initial_guess(const Grid1D& grid, double theta) {
    const double k = 0.5;
    const double xi0 = -std::atanh(1.0 - 2.0 * theta) / k;
    std::vector<double> phi(grid.n + 1);
    for (int i = 0; i <= grid.n; ++i) phi[i] = 0.5 * (1.0 - std::tanh(k * (grid.xi(i) - xi0)));
    phi[0] = 1.0;
    phi[grid.n] = 0.0;
    return phi;
}

}  // namespace detail

struct WarmStart {
    const std::vector<double>* phi = nullptr;  // must match the grid when set
    double sigma = std::numeric_limits<double>::quiet_NaN();
};

inline NonlocalSolveReport solve_truncated(const ModelParams& p, const TruncationConfig& cfg,
                                           const Grid1D& grid, const WarmStart& warm = {}) {
    validate_truncation(p, cfg, grid);
    const double omega = 0.5;   // potential under-relaxation
    const double utol = 1e-9;   // Picard convergence on max |u_new - u|
    const int max_picard = 300;

    std::vector<double> phi =
        warm.phi ? *warm.phi : detail::tanh_initial_guess(grid, cfg.theta);
    phi[0] = 1.0;
    phi[grid.n] = 0.0;
    double sigma;
    if (std::isfinite(warm.sigma)) {
        sigma = warm.sigma;
    } else if (std::max(p.a, p.b) <= 2.0) {
        sigma = 2.0;  // the local critical speed, exact in this region
    } else {
        sigma = sigma_star(ModelParams{p.a, p.b, 0.0}).sigma_star;
    }

    WaveProfile work{grid, phi, {}, {}, sigma, cfg.theta};
    PotentialField field = potential_from_profile(p, work);

    IterationCounts counts;
    double prev_delta = std::numeric_limits<double>::infinity();
    int growing = 0;
    bool settled = false;
    for (int cycle = 0; cycle < max_picard; ++cycle) {
        detail::BorderedState st =
            detail::bordered_newton(p, cfg, grid, field, sigma, std::move(phi));
        phi = std::move(st.phi);
        sigma = st.sigma;
        counts.newton += st.iterations;
        counts.sigma_updates += st.iterations;
        ++counts.picard;

        work.phi = phi;
        PotentialField fresh = potential_from_profile(p, work);
        double delta = 0.0;
        for (std::size_t i = 0; i < fresh.u.size(); ++i)
            delta = std::max(delta, std::fabs(fresh.u[i] - field.u[i]));
        for (std::size_t i = 0; i < fresh.u.size(); ++i) {
            field.u[i] = (1.0 - omega) * field.u[i] + omega * fresh.u[i];
            field.du[i] = (1.0 - omega) * field.du[i] + omega * fresh.du[i];
        }
        if (!std::isfinite(delta) || delta > 1e3)
            throw picard_not_contracting("potential update diverged, change = " +
                                         std::to_string(delta));
        growing = (delta > prev_delta) ? growing + 1 : 0;
        if (growing > 8)
            throw picard_not_contracting("potential update oscillates; b/(2 lambda^2) = " +
                                         std::to_string(p.b / (2 * p.lambda * p.lambda)));
        prev_delta = delta;
        if (delta < utol) {
            settled = true;
            break;
        }
    }
    if (!settled) throw sigma_stalled("relaxation did not settle within iteration budget");

    NonlocalSolveReport rep;
    rep.sigma = sigma;
    rep.iterations = counts;
    rep.profile = WaveProfile{grid, phi, field.u, velocity(field), sigma, cfg.theta};

    const double h = grid.h();
    const double L = p.lambda;
    const TruncationG g = make_truncation_g(cfg);
    std::vector<double> dphi = central_derivative(phi, h);
    double grad2 = 0.0, reac = 0.0, dmax = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        grad2 += dphi[i] * dphi[i] * h;
        reac += g_eval(g, phi[i]) * phi[i] * (1.0 - phi[i]) * (1.0 - phi[i]) * h;
        dmax = std::max(dmax, std::fabs(dphi[i]));
    }
    rep.energy_lhs = (1.0 - p.b / (2.0 * L * L)) * grad2 + reac;
    rep.energy_rhs = 2.0 + p.a / L + cfg.theta / cfg.alpha;

    const double tol_d = 1e-6;
    double dumax = detail::max_abs(field.du);
    auto add = [&rep](const std::string& name, double margin) {
        rep.diagnostics.push_back({name, margin, margin >= 0.0});
    };
    add("energy", rep.energy_rhs + 10.0 * h * h - rep.energy_lhs);
    add("sigma_floor", sigma + 1.2 * cfg.theta / cfg.alpha + tol_d);
    add("speed_cap", theorem3_speed_cap(p) + tol_d - sigma);
    add("u_prime_window", 2.0 + dumax + tol_d - sigma);
    add("derivative_bound",
        1.5 * (std::fabs(sigma) + dumax) + 0.75 * L + 1.5 / L + tol_d - dmax);
    {
        double rise = 0.0;
        for (std::size_t i = 1; i < phi.size(); ++i)
            rise = std::max(rise, phi[i] - phi[i - 1]);
        add("monotone", 1e-12 - rise);
    }
    {
        double out = 0.0;
        for (double v : phi) out = std::max({out, -v, v - 1.0});
        add("range", 1e-12 - out);
    }
    if (std::fabs(sigma) > 1e-6) {
        double err = 0.0;
        const double den = 1.0 - std::exp(-sigma * cfg.alpha);
        for (int i = 0; i <= grid.n; ++i) {
            if (phi[i] > cfg.theta) continue;
            const double tail =
                cfg.theta * (std::exp(-sigma * grid.xi(i)) - std::exp(-sigma * cfg.alpha)) / den;
            err = std::max(err, std::fabs(phi[i] - tail));
        }
        add("linear_tail", 10.0 * h * h * std::max(cfg.theta, 0.01) - err);
    }
    {
        PotentialBoundsCheck pb = check_potential_bounds(p, rep.profile, field);
        add("u_bound", pb.u_bound + 1e-8 - pb.u_max);
        add("du_bound", pb.du_bound + 1e-8 - pb.du_max);
    }
    return rep;
}

struct ContinuationRow {
    double theta = 0.0;
    double alpha = 0.0;
    double sigma = 0.0;
};

struct ContinuationReport {
    std::vector<ContinuationRow> table;
    NonlocalSolveReport final;
    double sigma_extrapolated = 0.0;
    std::string warning;
};

namespace detail {

inline Grid1D grid_for(double alpha, double h) {
    int n = static_cast<int>(std::lround(2.0 * alpha / h));
    if (n % 2 != 0) ++n;
    n = std::max(n, 8);
    return Grid1D{alpha, n};
}

inline std::vector<double> resample_profile(const WaveProfile& from, const Grid1D& to) {
    std::vector<double> xs(from.grid.n + 1), ys(from.grid.n + 1);
    for (int i = 0; i <= from.grid.n; ++i) {
        xs[i] = from.grid.xi(i);
        ys[i] = from.phi[i];
    }
    CubicHermite interp = make_pchip(std::move(xs), std::move(ys));
    std::vector<double> out(to.n + 1);
    for (int i = 0; i <= to.n; ++i) {
        const double x = to.xi(i);
        if (x <= -from.grid.alpha) out[i] = 1.0;
        else if (x >= from.grid.alpha) out[i] = 0.0;
        else out[i] = interp(x);
    }
    out[0] = 1.0;
    out[to.n] = 0.0;
    return out;
}

/* Power-law extrapolation from the last three speeds of the schedule:
   sigma(theta) = sigma_inf + C theta^p, exponent fitted by bisection. Falls
   back to the last value when the data do not fit the model. */
inline double richardson_theta(const std::vector<double>& thetas,
                               const std::vector<double>& sigmas) {
    const std::size_t n = sigmas.size();
    if (n < 3) return sigmas.back();
    const double t1 = thetas[n - 3], t2 = thetas[n - 2], t3 = thetas[n - 1];
    const double s1 = sigmas[n - 3], s2 = sigmas[n - 2], s3 = sigmas[n - 1];
    if (s2 == s3) return s3;
    const double target = (s1 - s2) / (s2 - s3);
    auto ratio = [&](double p) {
        return (std::pow(t1, p) - std::pow(t2, p)) / (std::pow(t2, p) - std::pow(t3, p));
    };
    double lo = 0.02, hi = 4.0;
    double flo = ratio(lo) - target;
    if (flo * (ratio(hi) - target) > 0.0) return s3;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = ratio(mid) - target;
        if (flo * fm <= 0.0) { hi = mid; }
        else { lo = mid; flo = fm; }
    }
    const double pfit = 0.5 * (lo + hi);
    const double t2p = std::pow(t2, pfit), t3p = std::pow(t3, pfit);
    return s3 - (s2 - s3) * t3p / (t2p - t3p);
}

inline WaveProfile translate_to_half(const ModelParams& p, const WaveProfile& w) {
    std::vector<double> xs(w.grid.n + 1), ys(w.grid.n + 1);
    for (int i = 0; i <= w.grid.n; ++i) {
        xs[i] = w.grid.xi(i);
        ys[i] = w.phi[i];
    }
    CubicHermite interp = make_pchip(xs, ys);
    double lo = xs.front(), hi = xs.back();
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::fabs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (interp(mid) >= 0.5 ? lo : hi) = mid;
    }
    const double shift = 0.5 * (lo + hi);
    WaveProfile out = w;
    for (int i = 0; i <= w.grid.n; ++i) {
        const double x = w.grid.xi(i) + shift;
        if (x <= xs.front()) out.phi[i] = 1.0;
        else if (x >= xs.back()) out.phi[i] = 0.0;
        else out.phi[i] = interp(x);
    }
    out.phi[0] = 1.0;
    out.phi[w.grid.n] = 0.0;
    PotentialField f = potential_from_profile(p, out);
    out.u = f.u;
    out.v = velocity(f);
    return out;
}

}  // namespace detail

inline ContinuationReport continue_theta_alpha(const ModelParams& p,
                                               const std::vector<double>& theta_schedule,
                                               const std::vector<double>& alpha_schedule,
                                               double h, const WaveProfile* seed = nullptr,
                                               double seed_sigma =
                                                   std::numeric_limits<double>::quiet_NaN()) {
    if (theta_schedule.empty() || alpha_schedule.empty())
        throw invalid_config("continuation schedules must be nonempty");
    for (std::size_t i = 1; i < theta_schedule.size(); ++i)
        if (!(theta_schedule[i] < theta_schedule[i - 1]))
            throw invalid_config("theta schedule must decrease");
    for (std::size_t i = 1; i < alpha_schedule.size(); ++i)
        if (!(alpha_schedule[i] > alpha_schedule[i - 1]))
            throw invalid_config("alpha schedule must increase");

    ContinuationReport rep;
    NonlocalSolveReport last;
    bool have = false;
    WarmStart ws;
    std::vector<double> carried;
    for (double alpha : alpha_schedule) {
        const Grid1D grid = detail::grid_for(alpha, h);
        if (have) {
            carried = detail::resample_profile(last.profile, grid);
            ws.phi = &carried;
            ws.sigma = last.sigma;
        } else if (seed) {
            carried = detail::resample_profile(*seed, grid);
            ws.phi = &carried;
            ws.sigma = seed_sigma;
        }
        for (double theta : theta_schedule) {
            TruncationConfig cfg{theta, alpha, 0.0};
            last = solve_truncated(p, cfg, grid, ws);
            have = true;
            ws.phi = &last.profile.phi;
            ws.sigma = last.sigma;
            rep.table.push_back({theta, alpha, last.sigma});
        }
    }

    // Extrapolate and check settling on the largest-alpha pass.
    std::vector<double> ts, ss;
    const double amax = alpha_schedule.back();
    for (const auto& row : rep.table)
        if (row.alpha == amax) {
            ts.push_back(row.theta);
            ss.push_back(row.sigma);
        }
    rep.sigma_extrapolated = detail::richardson_theta(ts, ss);
    if (ss.size() >= 3) {
        bool inc = true, dec = true;
        for (std::size_t i = 1; i < ss.size(); ++i) {
            inc = inc && ss[i] >= ss[i - 1];
            dec = dec && ss[i] <= ss[i - 1];
        }
        if (!inc && !dec) rep.warning = "sigma(theta) is not settling monotonically";
    }

    rep.final = std::move(last);
    rep.final.warning = rep.warning;
    rep.final.profile = detail::translate_to_half(p, rep.final.profile);
    return rep;
}

struct LambdaRow {
    double lambda = 0.0;
    double sigma = 0.0;
    double gap = 0.0;  // |sigma - local sigma*|
};

struct LambdaContinuationReport {
    std::vector<LambdaRow> rows;
    double local_sigma_star = 0.0;
    bool gap_decreasing = true;
    std::string truncated_reason;
};

inline LambdaContinuationReport lambda_continuation(double a, double b,
                                                    const std::vector<double>& lambda_list,
                                                    const std::vector<double>& theta_schedule,
                                                    const std::vector<double>& alpha_schedule,
                                                    double h) {
    if (lambda_list.empty()) throw invalid_config("lambda list must be nonempty");
    LambdaContinuationReport rep;
    rep.local_sigma_star = sigma_star(ModelParams{a, b, 0.0}).sigma_star;
    WaveProfile seed;
    bool have_seed = false;
    double seed_sigma = std::numeric_limits<double>::quiet_NaN();
    for (double lambda : lambda_list) {
        ModelParams p{a, b, lambda};
        if (!p.nonlocal_admissible()) {
            rep.truncated_reason = "lambda = " + std::to_string(lambda) +
                                   " violates b/(2 lambda^2) < 1, value = " +
                                   std::to_string(b / (2.0 * lambda * lambda));
            break;
        }
        const WaveProfile* sp = have_seed ? &seed : nullptr;
        ContinuationReport cr;
        try {
            cr = continue_theta_alpha(p, theta_schedule, alpha_schedule, h, sp, seed_sigma);
        } catch (const error&) {
            try {
                cr = continue_theta_alpha(p, theta_schedule, alpha_schedule, 0.5 * h, sp,
                                          seed_sigma);
            } catch (const error& e2) {
                throw continuation_broken("lambda step " + std::to_string(lambda) +
                                          " failed after grid refinement: " + e2.what());
            }
        }
        const double sig = cr.table.back().sigma;
        rep.rows.push_back({lambda, sig, std::fabs(sig - rep.local_sigma_star)});
        seed = cr.final.profile;
        have_seed = true;
        seed_sigma = sig;
    }
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].gap < rep.rows[i - 1].gap)) rep.gap_decreasing = false;
    return rep;
}

}  // namespace frontlab
