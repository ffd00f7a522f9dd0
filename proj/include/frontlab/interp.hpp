#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "frontlab/core.hpp"

/* Cubic Hermite interpolation on strictly increasing abscissae. Slopes are
   either supplied (exact derivative data) or computed with the monotone
   Fritsch-Carlson rule, so monotone data yields a monotone interpolant. */

namespace frontlab {

class CubicHermite {
  public:
    CubicHermite() = default;
    CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> m)
        : x_(std::move(x)), y_(std::move(y)), m_(std::move(m)) {
        if (x_.size() < 2 || x_.size() != y_.size() || x_.size() != m_.size())
            throw invalid_config("hermite interpolant needs matching arrays, length >= 2");
        for (std::size_t i = 1; i < x_.size(); ++i)
            if (!(x_[i] > x_[i - 1])) throw invalid_config("hermite abscissae must increase");
    }

    double xmin() const { return x_.front(); }
    double xmax() const { return x_.back(); }

    double operator()(double x) const {
        if (x <= x_.front()) return y_.front();
        if (x >= x_.back()) return y_.back();
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
    }

  private:
    std::vector<double> x_, y_, m_;
};

/* Fritsch-Carlson slopes: interior points get a weighted harmonic mean of
   adjacent secants (zero across local extrema), endpoints a clamped
   one-sided three-point estimate. */
inline std::vector<double> pchip_slopes(const std::vector<double>& x,
                                        const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n == 2) {
        m[0] = m[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return m;
    }
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double m0 = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m0 * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::fabs(m0) > 3.0 * std::fabs(d0)) return 3.0 * d0;
        return m0;
    };
    m[0] = endpoint(h[0], h[1], d[0], d[1]);
    m[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    return m;
}

inline CubicHermite make_pchip(std::vector<double> x, std::vector<double> y) {
    auto m = pchip_slopes(x, y);
    return CubicHermite(std::move(x), std::move(y), std::move(m));
}

/* Clamp supplied slopes into the Fritsch-Carlson monotonicity region of the
   data. Exact slopes of a resolved monotone function pass through unchanged. */
inline std::vector<double> monotone_clamped_slopes(const std::vector<double>& x,
                                                   const std::vector<double>& y,
                                                   std::vector<double> m) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dl = (i > 0) ? (y[i] - y[i - 1]) / (x[i] - x[i - 1]) : 0.0;
        double dr = (i + 1 < x.size()) ? (y[i + 1] - y[i]) / (x[i + 1] - x[i]) : 0.0;
        if (i == 0) dl = dr;
        if (i + 1 == x.size()) dr = dl;
        if (dl * dr <= 0.0) {
            m[i] = 0.0;
        } else {
            const double lo = std::min({0.0, 3.0 * dl, 3.0 * dr});
            const double hi = std::max({0.0, 3.0 * dl, 3.0 * dr});
            m[i] = std::clamp(m[i], lo, hi);
        }
    }
    return m;
}

}  // namespace frontlab
