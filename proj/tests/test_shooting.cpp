#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "frontlab/shooting.hpp"

using namespace frontlab;
using Catch::Matchers::WithinAbs;

TEST_CASE("phase-plane right-hand side") {
    {
        PhaseState d = rhs_phase(ModelParams{0.0, 0.0, 0.0}, PhaseState{0.5, 0.0}, 2.0);
        CHECK(d.phi == 0.0);
        CHECK_THAT(d.psi, WithinAbs(-0.25, 1e-15));
    }
    {
        PhaseState d = rhs_phase(ModelParams{1.0, 1.0, 0.0}, PhaseState{0.5, -0.5}, 2.0);
        CHECK(d.phi == -0.5);
        CHECK_THAT(d.psi, WithinAbs(0.4, 1e-15));
    }
    for (double phi : {0.0, 1.0}) {
        PhaseState d = rhs_phase(ModelParams{3.0, 7.0, 0.0}, PhaseState{phi, 0.0}, 2.5);
        CHECK(d.phi == 0.0);
        CHECK(d.psi == 0.0);
    }
}

TEST_CASE("saddle departure point") {
    PhaseState s = saddle_departure(2.0);
    const double lam = std::sqrt(2.0) - 1.0;
    CHECK_THAT(s.phi, WithinAbs(1.0 - 1e-6, 1e-18));
    CHECK_THAT(s.psi, WithinAbs(-1e-6 * lam, 1e-18));

    CHECK_THAT(-saddle_departure(0.0, 1.0).psi, WithinAbs(1.0, 1e-15));
    CHECK_THAT(-saddle_departure(3.0, 1.0).psi, WithinAbs((-3.0 + std::sqrt(13.0)) / 2.0, 1e-15));
}

TEST_CASE("classification of the documented runs") {
    CHECK(classify(ModelParams{0.0, 0.0, 0.0}, 2.5).kind == ShootKind::Converged);
    CHECK(classify(ModelParams{0.0, 0.0, 0.0}, 1.5).kind == ShootKind::Overshoot);
    CHECK(classify(ModelParams{20.0, 0.0, 0.0}, 3.0).kind != ShootKind::Converged);
    CHECK(classify(ModelParams{1.0, 1.0, 0.0}, 2.0).kind == ShootKind::Converged);
}

TEST_CASE("classification rejects the nonlocal model") {
    CHECK_THROWS_AS(classify(ModelParams{1.0, 1.0, 2.0}, 2.0), invalid_config);
}

TEST_CASE("converged runs stay inside the admissible strip") {
    ShootOptions opts;
    auto out = classify(ModelParams{1.0, 0.0, 0.0}, 2.5, opts);
    REQUIRE(out.kind == ShootKind::Converged);
    CHECK(out.state_event.phi >= -opts.eps_origin);
    CHECK(out.state_event.phi <= 1.0);
    CHECK(out.state_event.psi <= opts.eps_turn);
}

TEST_CASE("departure offset sensitivity") {
    for (auto [a, b, sigma] : {std::tuple{0.0, 0.0, 2.5}, std::tuple{4.0, 0.0, 2.1},
                               std::tuple{5.0, 5.0, 2.3}}) {
        ShootOptions fine;
        fine.delta = 1e-7;
        CHECK(classify(ModelParams{a, b, 0.0}, sigma).kind ==
              classify(ModelParams{a, b, 0.0}, sigma, fine).kind);
    }
}

TEST_CASE("critical speed for the pinned-at-2 region") {
    auto r0 = sigma_star(ModelParams{0.0, 0.0, 0.0});
    CHECK(r0.sigma_star == 2.0);
    CHECK(r0.bracket_lo == 2.0);
    CHECK(r0.bracket_hi == 2.0);
    CHECK(r0.sandwich_ok);

    auto r1 = sigma_star(ModelParams{1.0, 1.0, 0.0});
    CHECK(r1.sigma_star == 2.0);
    CHECK(r1.evaluations >= 1);

    auto r2 = sigma_star(ModelParams{0.0, 5.0, 0.0});
    CHECK_THAT(r2.sigma_star, WithinAbs(2.0, 1e-4));
}

TEST_CASE("critical speed above the pinned region") {
    auto r = sigma_star(ModelParams{4.0, 0.0, 0.0});
    CHECK_THAT(r.sigma_star, WithinAbs(2.033155, 2e-4));
    CHECK(r.bracket_hi - r.bracket_lo <= 1e-4);
    CHECK(r.sandwich_ok);
    CHECK(classify(ModelParams{4.0, 0.0, 0.0}, r.bracket_hi).kind == ShootKind::Converged);
    CHECK(classify(ModelParams{4.0, 0.0, 0.0}, r.bracket_lo).kind != ShootKind::Converged);

    auto r20 = sigma_star(ModelParams{20.0, 0.0, 0.0});
    CHECK_THAT(r20.sigma_star, WithinAbs(4.250494, 2e-4));
    CHECK(r20.sigma_star >= r20.bounds.lower - 1e-4);
    CHECK(r20.sigma_star <= r20.bounds.upper + 1e-4);

    auto r40 = sigma_star(ModelParams{40.0, 0.0, 0.0});
    CHECK_THAT(r40.sigma_star, WithinAbs(6.166445, 2e-4));
}

TEST_CASE("tolerance controls the bracket width") {
    auto fine = sigma_star(ModelParams{4.0, 0.0, 0.0}, 1e-6);
    CHECK(fine.bracket_hi - fine.bracket_lo <= 1e-6);
    CHECK_THAT(fine.sigma_star, WithinAbs(2.033155, 5e-5));
}

TEST_CASE("halving the integrator tolerance leaves sigma* in place") {
    ShootOptions tight;
    tight.rtol = 5e-11;
    auto base = sigma_star(ModelParams{12.0, 0.0, 0.0}, 1e-4);
    auto refined = sigma_star(ModelParams{12.0, 0.0, 0.0}, 1e-4, tight);
    CHECK(std::fabs(base.sigma_star - refined.sigma_star) < 10.0 * 1e-4);
    CHECK_THAT(base.sigma_star, WithinAbs(3.202032, 2e-4));
}

TEST_CASE("profile reconstruction satisfies the wave equation") {
    ModelParams p{0.0, 0.0, 0.0};
    Grid1D grid = make_grid(20.0, 4000);
    WaveProfile w = profile_from_shot(p, 2.0, grid);
    REQUIRE(w.phi.size() == 4001u);
    CHECK_THAT(w.phi[grid.mid()], WithinAbs(0.5, 1e-9));
    CHECK(profile_monotone(w, 1e-10));
    CHECK(profile_in_box(w, 1e-12));

    // Discrete residual of phi'' + sigma phi' + phi(1-phi) on the output.
    const double h = grid.h();
    double worst = 0.0;
    for (int i = 1; i < grid.n; ++i) {
        const double dp = (w.phi[i + 1] - w.phi[i - 1]) / (2.0 * h);
        const double dd = (w.phi[i - 1] - 2.0 * w.phi[i] + w.phi[i + 1]) / (h * h);
        worst = std::max(worst, std::fabs(dd + w.sigma * dp + w.phi[i] * (1.0 - w.phi[i])));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("profile reconstruction at an interior admissible speed") {
    ModelParams p{1.0, 1.0, 0.0};
    Grid1D grid = make_grid(15.0, 3000);
    WaveProfile w = profile_from_shot(p, 2.4, grid);
    CHECK(profile_monotone(w, 1e-10));
    CHECK(profile_in_box(w, 1e-12));
    CHECK_THAT(w.phi[grid.mid()], WithinAbs(0.5, 1e-9));

    // The tails decay at the saddle and node linearization rates, so the
    // residual mass at xi = +-15 follows from the eigenvalues at sigma = 2.4.
    const double lam_saddle = 0.5 * (-2.4 + std::sqrt(2.4 * 2.4 + 4.0));
    const double lam_node = 0.5 * (2.4 - std::sqrt(2.4 * 2.4 - 4.0));
    CHECK(1.0 - w.phi.front() < 10.0 * std::exp(-lam_saddle * 15.0));
    CHECK(w.phi.back() < 10.0 * std::exp(-lam_node * 15.0));
    const double front_rate =
        std::log((1.0 - w.phi[grid.n / 6]) / (1.0 - w.phi[0])) / (grid.xi(grid.n / 6) - grid.xi(0));
    CHECK_THAT(front_rate, WithinAbs(lam_saddle, 0.05 * lam_saddle));
}

TEST_CASE("profile reconstruction refuses inadmissible speeds") {
    Grid1D grid = make_grid(20.0, 4000);
    CHECK_THROWS_AS(profile_from_shot(ModelParams{1.0, 1.0, 0.0}, 1.5, grid), not_admissible);
}

TEST_CASE("outcome labels") {
    CHECK(std::string(to_string(ShootKind::Converged)) == "Converged");
    CHECK(std::string(to_string(ShootKind::Overshoot)) == "Overshoot");
    CHECK(std::string(to_string(ShootKind::Turnback)) == "Turnback");
    CHECK(std::string(to_string(ShootKind::Inconclusive)) == "Inconclusive");
}
