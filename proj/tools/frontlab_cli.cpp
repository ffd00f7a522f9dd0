#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "frontlab/bounds.hpp"
#include "frontlab/core.hpp"
#include "frontlab/nonlocal.hpp"
#include "frontlab/serialize.hpp"
#include "frontlab/shooting.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitSolver = 5;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        frontlab::write_file(out_path, text);
}

int thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("FRONTLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    return static_cast<int>(n);
}

struct BoundsArgs {
    double a = 0.0, b = 0.0;
    std::string out, format;
};

int run_bounds(const BoundsArgs& args) {
    frontlab::ModelParams p{args.a, args.b, 0.0};
    frontlab::SigmaBounds sb = frontlab::sigma_bounds(p);
    if (!args.format.empty()) {
        emit(frontlab::serialize_bounds(args.a, args.b, sb, frontlab::parse_format(args.format)),
             args.out);
        return 0;
    }
    std::string text = "lower=" + frontlab::fmt17(sb.lower) + "\nupper=" +
                       frontlab::fmt17(sb.upper) + "\nlower_branch=" + sb.lower_branch +
                       "\nupper_branch=" + sb.upper_branch + "\n";
    emit(text, args.out);
    return 0;
}

struct SigmaStarArgs {
    double a = 0.0, b = 0.0, tol = 1e-4;
    std::string out, format;
};

int run_sigma_star(const SigmaStarArgs& args) {
    frontlab::ModelParams p{args.a, args.b, 0.0};
    frontlab::SigmaStarResult r = frontlab::sigma_star(p, args.tol);
    std::string text;
    if (!args.format.empty() && frontlab::parse_format(args.format) == frontlab::Format::json) {
        json j{{"sigma_star", r.sigma_star},
               {"bracket_lo", r.bracket_lo},
               {"bracket_hi", r.bracket_hi},
               {"evaluations", r.evaluations},
               {"sigma_lower", r.bounds.lower},
               {"sigma_upper", r.bounds.upper},
               {"sandwich_ok", r.sandwich_ok},
               {"tol", args.tol}};
        text = j.dump(2) + "\n";
    } else {
        text = "sigma_star=" + frontlab::fmt17(r.sigma_star) + "\nbracket=[" +
               frontlab::fmt17(r.bracket_lo) + ", " + frontlab::fmt17(r.bracket_hi) +
               "]\nevaluations=" + std::to_string(r.evaluations) + "\nsigma_lower=" +
               frontlab::fmt17(r.bounds.lower) + "\nsigma_upper=" +
               frontlab::fmt17(r.bounds.upper) + "\nsandwich=" +
               (r.sandwich_ok ? "ok" : "violated") + "\ntol=" + frontlab::fmt17(args.tol) + "\n";
    }
    emit(text, args.out);
    if (!r.sandwich_ok) {
        std::fprintf(stderr, "internal consistency violated: sigma* outside analytic sandwich\n");
        return kExitInconsistent;
    }
    return 0;
}

struct ProfileArgs {
    double a = 0.0, b = 0.0, tol = 1e-4, alpha = 30.0, h = 0.01;
    double sigma = std::numeric_limits<double>::quiet_NaN();
    std::string out, format = "csv";
};

int run_profile(const ProfileArgs& args) {
    frontlab::ModelParams p{args.a, args.b, 0.0};
    double sigma = args.sigma;
    if (!std::isfinite(sigma)) {
        frontlab::SigmaStarResult r = frontlab::sigma_star(p, args.tol);
        sigma = r.bracket_hi;  // the certified-converged end of the bracket
    }
    frontlab::Grid1D grid = frontlab::detail::grid_for(args.alpha, args.h);
    frontlab::WaveProfile w = frontlab::profile_from_shot(p, sigma, grid);
    emit(frontlab::serialize_profile(w, frontlab::parse_format(args.format)), args.out);
    return 0;
}

struct SweepArgs {
    double a_start = 0.0, a_stop = 0.0, a_step = 1.0;
    std::vector<double> b_values;
    std::string mode = "local";
    double lambda = std::numeric_limits<double>::quiet_NaN();
    double tol = 1e-4;
    std::string out, format = "csv";
};

frontlab::SweepRow sweep_point(double a, double b, const SweepArgs& args) {
    frontlab::SweepRow row;
    row.a = a;
    row.b = b;
    try {
        frontlab::ModelParams local{a, b, 0.0};
        frontlab::SigmaBounds sb = frontlab::sigma_bounds(local);
        row.sigma_lower = sb.lower;
        row.sigma_upper = sb.upper;
        row.lower_branch = sb.lower_branch;
        row.upper_branch = sb.upper_branch;
        if (args.mode == "local") {
            row.sigma_star = frontlab::sigma_star(local, args.tol).sigma_star;
        } else {
            frontlab::ModelParams p{a, b, args.lambda};
            auto cr = frontlab::continue_theta_alpha(p, {0.2, 0.1, 0.05, 0.02, 0.01},
                                                     {20.0, 30.0, 40.0}, 0.01);
            row.sigma_star = cr.table.back().sigma;
        }
        row.status = "ok";
    } catch (const frontlab::error& e) {
        row.status = std::string("error: ") + e.what();
        for (char& c : row.status)
            if (c == ',' || c == '\n') c = ';';
    }
    return row;
}

int run_sweep(const SweepArgs& args) {
    if (!(args.a_step > 0.0)) throw frontlab::invalid_config("sweep step must be positive");
    if (!(args.a_stop >= args.a_start))
        throw frontlab::invalid_config("sweep range must have stop >= start");
    if (args.b_values.empty()) throw frontlab::invalid_config("sweep needs at least one b value");
    if (args.mode != "local" && args.mode != "nonlocal")
        throw frontlab::invalid_config("sweep mode must be local or nonlocal");
    if (args.mode == "nonlocal" && !std::isfinite(args.lambda))
        throw frontlab::invalid_config("nonlocal sweep requires --lambda");

    std::vector<std::pair<double, double>> points;
    const int na = static_cast<int>(std::floor((args.a_stop - args.a_start) / args.a_step + 0.5)) + 1;
    for (double b : args.b_values)
        for (int i = 0; i < na; ++i) points.emplace_back(args.a_start + i * args.a_step, b);

    std::vector<frontlab::SweepRow> rows(points.size());
    const int workers = std::min<int>(thread_budget(), static_cast<int>(points.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i)
            rows[i] = sweep_point(points[i].first, points[i].second, args);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < points.size(); i = next++)
                    rows[i] = sweep_point(points[i].first, points[i].second, args);
            });
        for (auto& t : pool) t.join();
    }
    emit(frontlab::serialize_sweep(rows, frontlab::parse_format(args.format)), args.out);
    return 0;
}

struct NonlocalArgs {
    double a = 0.0, b = 0.0, lambda = 1.0, h = 0.01;
    std::vector<double> theta_schedule, alpha_schedule;
    std::string out;  // optional profile CSV
};

json report_json(const frontlab::ContinuationReport& cr, const NonlocalArgs& args,
                 const std::vector<double>& thetas, const std::vector<double>& alphas) {
    json table = json::array();
    for (const auto& r : cr.table)
        table.push_back({{"theta", r.theta}, {"alpha", r.alpha}, {"sigma", r.sigma}});
    json diags = json::array();
    for (const auto& d : cr.final.diagnostics)
        diags.push_back({{"name", d.name}, {"margin", d.margin}, {"ok", d.ok}});
    return json{{"params", {{"a", args.a}, {"b", args.b}, {"lambda", args.lambda}}},
                {"sigma", cr.table.back().sigma},
                {"sigma_extrapolated", cr.sigma_extrapolated},
                {"iterations",
                 {{"newton", cr.final.iterations.newton},
                  {"picard", cr.final.iterations.picard},
                  {"sigma_updates", cr.final.iterations.sigma_updates}}},
                {"energy_lhs", cr.final.energy_lhs},
                {"energy_rhs", cr.final.energy_rhs},
                {"diagnostics", diags},
                {"warning", cr.warning},
                {"table", table},
                {"defaults",
                 {{"h", args.h}, {"theta_schedule", thetas}, {"alpha_schedule", alphas}}}};
}

int run_nonlocal(const NonlocalArgs& args) {
    frontlab::ModelParams p{args.a, args.b, args.lambda};
    frontlab::validate_params(p, frontlab::Mode::nonlocal);
    std::vector<double> thetas =
        args.theta_schedule.empty() ? std::vector<double>{0.2, 0.1, 0.05, 0.02, 0.01}
                                    : args.theta_schedule;
    std::vector<double> alphas =
        args.alpha_schedule.empty() ? std::vector<double>{20.0, 30.0, 40.0} : args.alpha_schedule;
    frontlab::ContinuationReport cr = frontlab::continue_theta_alpha(p, thetas, alphas, args.h);
    std::fputs((report_json(cr, args, thetas, alphas).dump(2) + "\n").c_str(), stdout);
    if (!args.out.empty())
        frontlab::write_file(args.out,
                             frontlab::serialize_profile(cr.final.profile, frontlab::Format::csv));
    return 0;
}

struct LambdaArgs {
    double a = 0.0, b = 0.0, h = 0.01;
    std::vector<double> lambda_list, theta_schedule, alpha_schedule;
    std::string out, format = "csv";
};

int run_lambda(const LambdaArgs& args) {
    std::vector<double> lambdas =
        args.lambda_list.empty() ? std::vector<double>{1.0, 0.5, 0.25, 0.1} : args.lambda_list;
    std::vector<double> thetas =
        args.theta_schedule.empty() ? std::vector<double>{0.2, 0.1, 0.05, 0.02, 0.01}
                                    : args.theta_schedule;
    std::vector<double> alphas =
        args.alpha_schedule.empty() ? std::vector<double>{20.0, 30.0, 40.0} : args.alpha_schedule;
    frontlab::LambdaContinuationReport rep =
        frontlab::lambda_continuation(args.a, args.b, lambdas, thetas, alphas, args.h);
    std::string text;
    if (frontlab::parse_format(args.format) == frontlab::Format::json) {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"lambda", r.lambda}, {"sigma", r.sigma}, {"gap", r.gap}});
        json j{{"local_sigma_star", rep.local_sigma_star},
               {"gap_decreasing", rep.gap_decreasing},
               {"rows", rows},
               {"truncated_reason", rep.truncated_reason},
               {"defaults",
                {{"h", args.h}, {"theta_schedule", thetas}, {"alpha_schedule", alphas}}}};
        text = j.dump(2) + "\n";
    } else {
        text = "lambda,sigma,gap\n";
        for (const auto& r : rep.rows)
            text += frontlab::fmt17(r.lambda) + "," + frontlab::fmt17(r.sigma) + "," +
                    frontlab::fmt17(r.gap) + "\n";
    }
    emit(text, args.out);
    if (!rep.truncated_reason.empty())
        std::fprintf(stderr, "note: %s\n", rep.truncated_reason.c_str());
    return 0;
}

template <typename Fn>
int guarded(Fn&& fn, const char* stage) {
    try {
        return fn();
    } catch (const frontlab::inconclusive_region& e) {
        std::fprintf(stderr, "inconclusive: %s\n", e.what());
        return kExitInconclusive;
    } catch (const frontlab::negative_parameter& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return kExitValidation;
    } catch (const frontlab::nonlocal_condition_violated& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return kExitValidation;
    } catch (const frontlab::invalid_config& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitValidation;
    } catch (const frontlab::odd_n& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitValidation;
    } catch (const frontlab::too_coarse& e) {
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitValidation;
    } catch (const frontlab::not_admissible& e) {
        std::fprintf(stderr, "invalid request: %s\n", e.what());
        return kExitValidation;
    } catch (const frontlab::error& e) {
        std::fprintf(stderr, "solver failure in %s: %s\n", stage, e.what());
        return kExitSolver;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frontlab: traveling-wave speeds and profiles for a nonlocal interface model"};
    app.require_subcommand(1);
    // The grid-spacing flag is the long-form --h, so help stays long-form too.
    app.set_help_flag("--help", "print this help and exit");

    BoundsArgs ba;
    auto* cb = app.add_subcommand("bounds", "Analytic lower/upper bounds for sigma*");
    cb->add_option("--a", ba.a, "advection strength a >= 0")->required();
    cb->add_option("--b", ba.b, "gradient coupling b >= 0")->required();
    cb->add_option("--out", ba.out, "output path (default stdout)");
    cb->add_option("--format", ba.format, "csv or json (default plain text)");

    SigmaStarArgs sa;
    auto* cs = app.add_subcommand("sigma-star", "Critical speed via phase-plane bisection");
    cs->add_option("--a", sa.a)->required();
    cs->add_option("--b", sa.b)->required();
    cs->add_option("--tol", sa.tol, "bisection tolerance (default 1e-4)");
    cs->add_option("--out", sa.out);
    cs->add_option("--format", sa.format);

    ProfileArgs pa;
    auto* cp = app.add_subcommand("profile", "Wave profile phi(xi) from the shooting trajectory");
    cp->add_option("--a", pa.a)->required();
    cp->add_option("--b", pa.b)->required();
    cp->add_option("--sigma", pa.sigma, "wave speed (default: computed sigma*)");
    cp->add_option("--tol", pa.tol);
    cp->add_option("--alpha", pa.alpha, "domain half-width (default 30)");
    cp->add_option("--h", pa.h, "grid spacing (default 0.01)");
    cp->add_option("--out", pa.out);
    cp->add_option("--format", pa.format);

    SweepArgs wa;
    auto* cw = app.add_subcommand("sweep", "Parameter sweep over a for fixed b values");
    cw->add_option("--a-start", wa.a_start)->required();
    cw->add_option("--a-stop", wa.a_stop)->required();
    cw->add_option("--a-step", wa.a_step, "step > 0 (default 1)");
    cw->add_option("--b", wa.b_values, "b values, repeatable")->required();
    cw->add_option("--mode", wa.mode, "local or nonlocal (default local)");
    cw->add_option("--lambda", wa.lambda, "sensing length, required for nonlocal mode");
    cw->add_option("--tol", wa.tol);
    cw->add_option("--out", wa.out);
    cw->add_option("--format", wa.format);

    NonlocalArgs na;
    auto* cn = app.add_subcommand("nonlocal", "Truncated nonlocal solve with continuation");
    cn->add_option("--a", na.a)->required();
    cn->add_option("--b", na.b)->required();
    cn->add_option("--lambda", na.lambda, "sensing length > 0")->required();
    cn->add_option("--theta", na.theta_schedule,
                   "theta schedule, repeatable (default 0.2 0.1 0.05 0.02 0.01)");
    cn->add_option("--alpha", na.alpha_schedule, "alpha schedule, repeatable (default 20 30 40)");
    cn->add_option("--h", na.h);
    cn->add_option("--out", na.out, "write final profile CSV here");

    LambdaArgs la;
    auto* cl = app.add_subcommand("lambda-continuation",
                                  "Track sigma while lambda decreases toward the local limit");
    cl->add_option("--a", la.a)->required();
    cl->add_option("--b", la.b)->required();
    cl->add_option("--lambda", la.lambda_list, "lambda list, repeatable (default 1 0.5 0.25 0.1)");
    cl->add_option("--theta", la.theta_schedule);
    cl->add_option("--alpha", la.alpha_schedule);
    cl->add_option("--h", la.h);
    cl->add_option("--out", la.out);
    cl->add_option("--format", la.format);

    for (CLI::App* sc : {cb, cs, cp, cw, cn, cl})
        sc->set_help_flag("--help", "print this help and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    if (cb->parsed()) return guarded([&] { return run_bounds(ba); }, "bounds");
    if (cs->parsed()) return guarded([&] { return run_sigma_star(sa); }, "shooting");
    if (cp->parsed()) return guarded([&] { return run_profile(pa); }, "profile reconstruction");
    if (cw->parsed()) return guarded([&] { return run_sweep(wa); }, "sweep");
    if (cn->parsed()) return guarded([&] { return run_nonlocal(na); }, "nonlocal continuation");
    if (cl->parsed()) return guarded([&] { return run_lambda(la); }, "lambda continuation");
    return kExitValidation;
}
