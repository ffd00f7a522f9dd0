#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "frontlab/bounds.hpp"
#include "frontlab/helmholtz.hpp"
#include "frontlab/nonlocal.hpp"
#include "frontlab/shooting.hpp"

using namespace frontlab;

namespace {

std::vector<WaveProfile>& registry() {
    static std::vector<WaveProfile> r;
    return r;
}

struct Criterion {
    int id;
    bool ok = true;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Criterion(int n) : id(n) {}
    bool check(bool c) {
        ok = ok && c;
        return c;
    }
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    bool finish(double limit_seconds) {
        const double t = elapsed();
        const bool in_time = t < limit_seconds;
        ok = ok && in_time;
        std::printf("[criterion %d] %s (%.2f s)\n", id, ok ? "PASS" : "FAIL", t);
        std::fflush(stdout);
        return in_time;
    }
};

}  // namespace

TEST_CASE("criterion 1: critical speed is pinned at two on the small grid") {
    Criterion c(1);
    try {
        for (double a : {0.0, 0.5, 1.0, 1.5, 2.0}) {
            for (double b : {0.0, 0.5, 1.0, 1.5, 2.0}) {
                ModelParams p{a, b, 0.0};
                SigmaStarResult r = sigma_star(p, 1e-4);
                CHECK(c.check(std::fabs(r.sigma_star - 2.0) <= 1e-3));
                CHECK(c.check(r.sandwich_ok));
                registry().push_back(
                    profile_from_shot(p, r.bracket_hi, make_grid(15.0, 1500)));
            }
        }
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(30.0));
}

TEST_CASE("criterion 2: computed speed respects the analytic sandwich") {
    Criterion c(2);
    try {
        for (double b : {0.0, 5.0, 40.0}) {
            for (int ia = 0; ia <= 40; ++ia) {
                ModelParams p{double(ia), b, 0.0};
                SigmaStarResult r = sigma_star(p, 1e-4);
                CHECK(c.check(r.sigma_star >= r.bounds.lower - 1e-3));
                CHECK(c.check(r.sigma_star <= r.bounds.upper + 1e-3));
                if (ia % 8 == 0)
                    registry().push_back(
                        profile_from_shot(p, r.bracket_hi, make_grid(20.0, 2000)));
            }
        }
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(600.0));
}

TEST_CASE("criterion 3: subcritical shot is not classified as converged") {
    Criterion c(3);
    try {
        ShootOutcome out = classify(ModelParams{20.0, 0.0, 0.0}, 4.0);
        CHECK(c.check(out.kind != ShootKind::Converged));
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(1.0));
}

TEST_CASE("criterion 4: subsolution inequality holds with positive margin") {
    Criterion c(4);
    try {
        SubsolutionCheck chk = verify_subsolution(ModelParams{1.0, 1.0, 0.0}, 2.0, 1.0);
        CHECK(c.check(chk.ok));
        CHECK(c.check(chk.worst_margin > 0.0));
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(1.0));
}

TEST_CASE("criterion 5: breakpoint root and branch continuity") {
    Criterion c(5);
    try {
        CubicRoot root = a_star();
        CHECK(c.check(root.residual < 1e-10));
        CHECK(c.check(std::fabs(breakpoint_cubic(root.value)) < 1e-10));
        for (double bp : {2.0, root.value, 16.0}) {
            const double left = sigma_upper(ModelParams{bp - 1e-10, 0.0, 0.0}).value;
            const double right = sigma_upper(ModelParams{bp + 1e-10, 0.0, 0.0}).value;
            CHECK(c.check(std::fabs(left - right) < 1e-9));
        }
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(0.5));
}

TEST_CASE("criterion 6: screened-Poisson solver converges at second order") {
    Criterion c(6);
    try {
        const double L = 1.3;
        std::vector<double> errs;
        for (double h : {0.04, 0.02, 0.01}) {
            Grid1D grid = detail::grid_for(12.0, h);
            std::vector<double> rhs(grid.n + 1), exact(grid.n + 1);
            for (int i = 0; i <= grid.n; ++i) {
                const double x = grid.xi(i);
                const double u = std::exp(-x * x);
                exact[i] = u;
                rhs[i] = u - L * L * (4.0 * x * x - 2.0) * u;
            }
            PotentialField f = convolve_extended(KernelSpec{L}, grid, rhs, 0.0, 0.0);
            double err = 0.0;
            for (int i = 0; i <= grid.n; ++i)
                err = std::max(err, std::fabs(f.u[i] - exact[i]));
            errs.push_back(err);
        }
        CHECK(c.check(std::log2(errs[0] / errs[1]) >= 1.9));
        CHECK(c.check(std::log2(errs[1] / errs[2]) >= 1.9));

        Grid1D grid = detail::grid_for(12.0, 0.02);
        std::vector<double> one(grid.n + 1, 3.25);
        PotentialField f = convolve_extended(KernelSpec{L}, grid, one, 3.25, 3.25);
        double err = 0.0;
        for (double u : f.u) err = std::max(err, std::fabs(u - 3.25));
        CHECK(c.check(err < 1e-10));
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(5.0));
}

TEST_CASE("criterion 7: benchmark continuation lands in the certified window") {
    Criterion c(7);
    try {
        ModelParams p{1.0, 1.0, 2.0};
        ContinuationReport cr =
            continue_theta_alpha(p, {0.2, 0.1, 0.05, 0.02, 0.01}, {20.0, 30.0, 40.0}, 0.01);
        CHECK(c.check(cr.table.size() == 15u));
        const double s = cr.table.back().sigma;
        CHECK(c.check(s >= 2.0 - 5e-3));
        CHECK(c.check(s <= theorem3_speed_cap(p) + 5e-3));
        CHECK(c.check(profile_monotone(cr.final.profile, 1e-9)));
        CHECK(c.check(profile_in_box(cr.final.profile, 1e-9)));
        CHECK(c.check(cr.final.energy_rhs - cr.final.energy_lhs > 0.0));
        registry().push_back(cr.final.profile);
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(300.0));
}

TEST_CASE("criterion 8: decoupled continuation recovers the classical speed") {
    Criterion c(8);
    try {
        for (double lambda : {0.5, 1.0, 2.0}) {
            ModelParams p{0.0, 0.0, lambda};
            ContinuationReport cr =
                continue_theta_alpha(p, {0.2, 0.1, 0.05, 0.02, 0.01}, {20.0, 30.0, 40.0}, 0.01);
            CHECK(c.check(std::fabs(cr.table.back().sigma - 2.0) <= 5e-3));
            registry().push_back(cr.final.profile);
        }
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(300.0));
}

TEST_CASE("criterion 9: sensing-length continuation closes the gap monotonically") {
    Criterion c(9);
    try {
        LambdaContinuationReport rep =
            lambda_continuation(1.0, 0.0, {1.0, 0.5, 0.25, 0.1},
                                {0.2, 0.1, 0.05, 0.02, 0.01}, {20.0, 30.0, 40.0}, 0.01);
        CHECK(c.check(rep.rows.size() == 4u));
        CHECK(c.check(rep.gap_decreasing));
        for (std::size_t i = 1; i < rep.rows.size(); ++i)
            CHECK(c.check(rep.rows[i].gap < rep.rows[i - 1].gap));
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(600.0));
}

TEST_CASE("criterion 10: randomized structural properties") {
    Criterion c(10);
    try {
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> ab(0.0, 6.0);
        std::uniform_real_distribution<double> sp(2.0, 7.0);
        std::uniform_real_distribution<double> aw(0.0, 30.0);

        for (int k = 0; k < 50; ++k) {
            const double a = ab(rng), b = ab(rng);
            double s1 = sp(rng), s2 = sp(rng);
            if (s1 > s2) std::swap(s1, s2);
            if (s2 - s1 < 1e-3) s2 = s1 + 1e-3;
            ModelParams p{a, b, 0.0};
            if (classify(p, s1).kind == ShootKind::Converged)
                CHECK(c.check(classify(p, s2).kind == ShootKind::Converged));
        }

        for (int k = 0; k < 20; ++k) {
            double a1 = aw(rng), a2 = aw(rng);
            if (a1 > a2) std::swap(a1, a2);
            const double b = (k % 2 == 0) ? 0.0 : 5.0;
            const double s1 = sigma_star(ModelParams{a1, b, 0.0}, 1e-4).sigma_star;
            const double s2 = sigma_star(ModelParams{a2, b, 0.0}, 1e-4).sigma_star;
            CHECK(c.check(s1 <= s2 + 2e-4));
        }

        CHECK(c.check(!registry().empty()));
        for (const WaveProfile& w : registry()) {
            CHECK(c.check(profile_monotone(w, 1e-9)));
            CHECK(c.check(profile_in_box(w, 1e-9)));
        }
    } catch (const std::exception& e) {
        CHECK(c.check(false));
        WARN(std::string("exception: ") + e.what());
    }
    CHECK(c.finish(600.0));
}
