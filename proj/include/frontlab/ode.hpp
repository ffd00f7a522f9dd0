#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "frontlab/core.hpp"

/* Adaptive embedded Runge-Kutta integrator (Dormand-Prince 5(4)) for planar
   systems, with terminal event detection. Events are refined by bisecting
   the step length of a single embedded step from the last accepted state,
   so no dense-output interpolant is needed. */

namespace frontlab {

using State2 = std::array<double, 2>;
using Rhs2 = std::function<State2(double, const State2&)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double hmax = 1.0;
    double h0 = 1e-3;
    double t_max = 1e4;
};

struct EventSpec {
    std::function<double(double, const State2&)> fn;
    int direction = 0;  // -1 falling, +1 rising, 0 any crossing
    // all events are terminal: integration stops at the first crossing
};

struct OdeResult {
    std::vector<double> t;       // filled only when trajectory storage is on
    std::vector<State2> y;
    std::vector<State2> yp;      // rhs at the stored nodes
    int event_index = -1;        // -1: no event fired
    double t_event = 0.0;
    State2 y_event{0.0, 0.0};
    bool step_underflow = false;
    bool tmax_reached = false;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double dp_b5[7] = {35.0 / 384,      0.0,         500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784,  11.0 / 84,   0.0};
inline constexpr double dp_b4[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

/* One embedded step of size h from (t, y); k[0] must hold rhs(t, y) on
   entry (FSAL). Returns the 5th-order result and the embedded error. */
inline State2 dp_step(const Rhs2& rhs, double t, const State2& y, double h, State2 k[7],
                      State2* err = nullptr) {
    for (int s = 1; s < 7; ++s) {
        State2 ys = y;
        for (int j = 0; j < s; ++j) {
            ys[0] += h * dp_a[s][j] * k[j][0];
            ys[1] += h * dp_a[s][j] * k[j][1];
        }
        k[s] = rhs(t + dp_c[s] * h, ys);
    }
    State2 y5 = y;
    for (int s = 0; s < 7; ++s) {
        y5[0] += h * dp_b5[s] * k[s][0];
        y5[1] += h * dp_b5[s] * k[s][1];
    }
    if (err) {
        (*err) = {0.0, 0.0};
        for (int s = 0; s < 7; ++s) {
            (*err)[0] += h * (dp_b5[s] - dp_b4[s]) * k[s][0];
            (*err)[1] += h * (dp_b5[s] - dp_b4[s]) * k[s][1];
        }
    }
    return y5;
}

inline double crossing_value(const EventSpec& ev, double v0, double v1) {
    if (ev.direction > 0) return (v0 < 0.0 && v1 >= 0.0) ? 1.0 : 0.0;
    if (ev.direction < 0) return (v0 > 0.0 && v1 <= 0.0) ? 1.0 : 0.0;
    return (v0 * v1 <= 0.0 && v0 != v1 && (v0 != 0.0 || v1 != 0.0)) ? 1.0 : 0.0;
}

}  // namespace detail

template <class Events>
OdeResult integrate(const Rhs2& rhs, const State2& y0, const OdeOptions& opts,
                    const Events& events, bool store = false) {
    OdeResult res;
    double t = 0.0;
    State2 y = y0;
    State2 k[7];
    k[0] = rhs(t, y);
    if (store) {
        res.t.push_back(t);
        res.y.push_back(y);
        res.yp.push_back(k[0]);
    }
    std::vector<double> ev_vals(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) ev_vals[e] = events[e].fn(t, y);

    double h = std::min(opts.h0, opts.hmax);
    while (t < opts.t_max) {
        if (h < 1e-14 * std::max(1.0, std::fabs(t))) {
            res.step_underflow = true;
            return res;
        }
        h = std::min(h, opts.t_max - t);
        h = std::min(h, opts.hmax);
        State2 err;
        State2 kw[7];
        for (int s = 0; s < 7; ++s) kw[s] = k[s];
        State2 y1 = detail::dp_step(rhs, t, y, h, kw, &err);
        double en = 0.0;
        for (int i = 0; i < 2; ++i) {
            double sc = opts.atol + opts.rtol * std::max(std::fabs(y[i]), std::fabs(y1[i]));
            en += (err[i] / sc) * (err[i] / sc);
        }
        en = std::sqrt(0.5 * en);
        if (en > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            continue;
        }

        // Accepted. Check each event for a sign crossing over this step.
        double s_best = -1.0;
        int e_best = -1;
        State2 y_best;
        for (std::size_t e = 0; e < events.size(); ++e) {
            double v1 = events[e].fn(t + h, y1);
            if (detail::crossing_value(events[e], ev_vals[e], v1) != 0.0) {
                // Bisect the step length; evaluate by a fresh step from (t, y).
                double slo = 0.0, shi = h;
                State2 yhi = y1;
                for (int it = 0; it < 60 && shi - slo > 1e-13 * h; ++it) {
                    double sm = 0.5 * (slo + shi);
                    State2 km[7];
                    for (int s = 0; s < 7; ++s) km[s] = k[s];
                    State2 ym = detail::dp_step(rhs, t, y, sm, km);
                    double vm = events[e].fn(t + sm, ym);
                    if (detail::crossing_value(events[e], ev_vals[e], vm) != 0.0) {
                        shi = sm;
                        yhi = ym;
                    } else {
                        slo = sm;
                    }
                }
                if (e_best < 0 || shi < s_best) {
                    s_best = shi;
                    e_best = static_cast<int>(e);
                    y_best = yhi;
                }
            }
            ev_vals[e] = v1;
        }
        if (e_best >= 0) {
            res.event_index = e_best;
            res.t_event = t + s_best;
            res.y_event = y_best;
            if (store) {
                res.t.push_back(res.t_event);
                res.y.push_back(y_best);
                res.yp.push_back(rhs(res.t_event, y_best));
            }
            return res;
        }

        t += h;
        y = y1;
        k[0] = kw[6];  // FSAL: last stage equals rhs at the new point
        if (store) {
            res.t.push_back(t);
            res.y.push_back(y);
            res.yp.push_back(k[0]);
        }
        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-10), -0.2)));
    }
    res.tmax_reached = true;
    return res;
}

}  // namespace frontlab
