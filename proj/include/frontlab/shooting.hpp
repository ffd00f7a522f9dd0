#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "frontlab/bounds.hpp"
#include "frontlab/core.hpp"
#include "frontlab/interp.hpp"
#include "frontlab/ode.hpp"

/* Phase-plane machinery for the local model (lambda = 0): integrate the
   heteroclinic candidate leaving the saddle at (1, 0), classify the outcome,
   and locate the critical speed by bisection on the monotone admissibility
   predicate. */

namespace frontlab {

enum class ShootKind { Converged, Overshoot, Turnback, Inconclusive };

inline const char* to_string(ShootKind k) {
    switch (k) {
        case ShootKind::Converged: return "Converged";
        case ShootKind::Overshoot: return "Overshoot";
        case ShootKind::Turnback: return "Turnback";
        default: return "Inconclusive";
    }
}

struct ShootOutcome {
    ShootKind kind = ShootKind::Inconclusive;
    double t_event = 0.0;
    PhaseState state_event;
};

struct ShootOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double eps_origin = 1e-6;  // origin ball: entry with phi >= 0 means Converged
    double eps_turn = 1e-9;    // psi rising through this means Turnback
    double t_max = 1e4;
    double delta = 1e-6;       // departure offset along the unstable eigenvector
    double hmax = 1.0;
};

/* phi' = psi, psi' = (-sigma psi - a psi^2 - phi(1-phi)) / (1 + b psi^2).
   The denominator never vanishes for b >= 0. */
inline PhaseState rhs_phase(const ModelParams& p, const PhaseState& s, double sigma) {
    const double num = -sigma * s.psi - p.a * s.psi * s.psi - s.phi * (1.0 - s.phi);
    return PhaseState{s.psi, num / (1.0 + p.b * s.psi * s.psi)};
}

/* Departure point at distance delta from (1, 0) along the unstable
   eigenvector into {phi < 1, psi < 0}. The quadratic advection terms do not
   enter the linearization at the saddle. */
inline PhaseState saddle_departure(double sigma, double delta = 1e-6) {
    const double lam = 0.5 * (-sigma + std::sqrt(sigma * sigma + 4.0));
    return PhaseState{1.0 - delta, -delta * lam};
}

inline ShootOutcome classify(const ModelParams& p, double sigma, const ShootOptions& opts = {}) {
    if (p.lambda != 0.0) throw invalid_config("classification runs on the local model");
    const PhaseState dep = saddle_departure(sigma, opts.delta);
    Rhs2 rhs = [&p, sigma](double, const State2& y) {
        PhaseState d = rhs_phase(p, PhaseState{y[0], y[1]}, sigma);
        return State2{d.phi, d.psi};
    };
    // Below psi_runaway the slope psi' stays negative as long as phi is in
    // [0, 1]: a psi^2 + sigma psi = |psi| (a |psi| - sigma) > 0 there, so the
    // trajectory is certified to leave through phi = 0. Stopping on this line
    // classifies the quadratic-drag blowup (b = 0, large a) as the overshoot
    // it is, before the finite-time singularity stalls the integrator.
    const double psi_runaway = (p.a > 0.0) ? -(2.0 * sigma / p.a + 1.0) : -1e30;
    std::array<EventSpec, 4> events{
        EventSpec{[&opts](double, const State2& y) {
                      return std::hypot(y[0], y[1]) - opts.eps_origin;
                  },
                  -1},
        EventSpec{[](double, const State2& y) { return y[0]; }, -1},
        EventSpec{[&opts](double, const State2& y) { return y[1] - opts.eps_turn; }, +1},
        EventSpec{[psi_runaway](double, const State2& y) { return y[1] - psi_runaway; }, -1}};
    OdeOptions oo;
    oo.rtol = opts.rtol;
    oo.atol = opts.atol;
    oo.t_max = opts.t_max;
    oo.hmax = opts.hmax;
    OdeResult r = integrate(rhs, State2{dep.phi, dep.psi}, oo, events);
    ShootOutcome out;
    out.t_event = r.t_event;
    out.state_event = PhaseState{r.y_event[0], r.y_event[1]};
    if (r.step_underflow || r.tmax_reached || r.event_index < 0) {
        out.kind = ShootKind::Inconclusive;
    } else if (r.event_index == 0) {
        out.kind = (out.state_event.phi >= 0.0) ? ShootKind::Converged : ShootKind::Overshoot;
    } else if (r.event_index == 1 || r.event_index == 3) {
        out.kind = ShootKind::Overshoot;
    } else {
        out.kind = ShootKind::Turnback;
    }
    return out;
}

struct SigmaStarResult {
    double sigma_star = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int evaluations = 0;
    SigmaBounds bounds;
    bool sandwich_ok = false;
};

/* Bisection on sigma with the classification as predicate. Admissible
   sigmas form an upper-unbounded interval, so Converged is monotone in
   sigma and the bisection limit is the critical speed. sigma = 2 is probed
   first: when it already converges the exact value 2 is returned. */
inline SigmaStarResult sigma_star(const ModelParams& p, double tol = 1e-4,
                                  const ShootOptions& opts = {}) {
    validate_params(p, Mode::local);
    SigmaStarResult res;
    res.bounds = sigma_bounds(p);
    int evals = 0;
    auto conv = [&](double s) {
        ++evals;
        ShootOutcome o = classify(p, s, opts);
        if (o.kind == ShootKind::Inconclusive)
            throw inconclusive_region("classification inconclusive at sigma = " +
                                      std::to_string(s));
        return o.kind == ShootKind::Converged;
    };
    if (conv(2.0)) {
        res.sigma_star = 2.0;
        res.bracket_lo = res.bracket_hi = 2.0;
    } else {
        double lo = 2.0 - tol;
        double hi = res.bounds.upper + 1.0;
        int doublings = 0;
        while (!conv(hi)) {
            if (++doublings > 3)
                throw bracket_failure("no admissible sigma up to " + std::to_string(hi));
            hi = 2.0 + 2.0 * (hi - 2.0);
        }
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (conv(mid)) hi = mid;
            else lo = mid;
        }
        res.sigma_star = 0.5 * (lo + hi);
        res.bracket_lo = lo;
        res.bracket_hi = hi;
    }
    res.evaluations = evals;
    res.sandwich_ok = (res.bounds.lower - tol <= res.sigma_star) &&
                      (res.sigma_star <= res.bounds.upper + tol);
    return res;
}

/* Reconstruct phi(xi) from a converged shot. The trajectory is integrated
   deeper into the origin (ball 1e-11) than classification requires, with
   steps capped at the grid spacing, then translated so phi(0) = 1/2 and
   resampled by cubic Hermite interpolation with the exact slopes psi. The
   pieces beyond the sampled range use the saddle and node linearizations. */
inline WaveProfile profile_from_shot(const ModelParams& p, double sigma, const Grid1D& grid,
                                     const ShootOptions& opts = {}) {
    ShootOutcome chk = classify(p, sigma, opts);
    if (chk.kind != ShootKind::Converged)
        throw not_admissible("sigma = " + std::to_string(sigma) + " classifies as " +
                             to_string(chk.kind));

    const double eps_deep = 1e-11;
    const PhaseState dep = saddle_departure(sigma, opts.delta);
    Rhs2 rhs = [&p, sigma](double, const State2& y) {
        PhaseState d = rhs_phase(p, PhaseState{y[0], y[1]}, sigma);
        return State2{d.phi, d.psi};
    };
    std::array<EventSpec, 1> events{EventSpec{
        [eps_deep](double, const State2& y) { return std::hypot(y[0], y[1]) - eps_deep; }, -1}};
    OdeOptions oo;
    oo.rtol = opts.rtol;
    oo.atol = opts.atol;
    oo.t_max = opts.t_max;
    oo.hmax = grid.h();
    OdeResult tr = integrate(rhs, State2{dep.phi, dep.psi}, oo, events, true);
    if (tr.y.size() < 4) throw not_admissible("trajectory too short to resample");

    std::vector<double> ts(tr.t), phis(tr.y.size()), psis(tr.y.size());
    for (std::size_t i = 0; i < tr.y.size(); ++i) {
        phis[i] = tr.y[i][0];
        psis[i] = tr.y[i][1];
    }
    CubicHermite traj(ts, phis, monotone_clamped_slopes(ts, phis, psis));

    // Locate the half-height time by bisection on the interpolant.
    double tl = ts.front(), th = ts.back();
    if (!(phis.front() >= 0.5 && phis.back() <= 0.5))
        throw not_admissible("front does not cross 1/2");
    for (int it = 0; it < 200 && th - tl > 1e-14 * std::max(1.0, th); ++it) {
        const double tm = 0.5 * (tl + th);
        (traj(tm) >= 0.5 ? tl : th) = tm;
    }
    const double t_half = 0.5 * (tl + th);

    const double lam_unstable = 0.5 * (-sigma + std::sqrt(sigma * sigma + 4.0));
    const double disc = sigma * sigma - 4.0;
    const double mu_slow = (disc >= 0.0) ? 0.5 * (sigma - std::sqrt(disc)) : 0.5 * sigma;
    const double phi_end = phis.back();
    const double t_end = ts.back();

    WaveProfile w;
    w.grid = grid;
    w.sigma = sigma;
    w.theta = 0.0;
    w.phi.resize(grid.n + 1);
    for (int i = 0; i <= grid.n; ++i) {
        const double t = t_half + grid.xi(i);
        double v;
        if (t < ts.front()) {
            v = 1.0 - (1.0 - phis.front()) * std::exp(lam_unstable * (t - ts.front()));
        } else if (t > t_end) {
            v = phi_end * std::exp(-mu_slow * (t - t_end));
        } else {
            v = traj(t);
        }
        w.phi[i] = std::min(1.0, std::max(0.0, v));
    }
    return w;
}

}  // namespace frontlab
