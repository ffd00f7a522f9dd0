#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontlab/core.hpp"

namespace frontlab {

enum class Format { csv, json };

inline Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw invalid_config("unknown format '" + s + "', expected csv or json");
}

// 17 significant digits round-trip any double exactly.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw non_finite_value(std::string("non-finite value in ") + what);
}

inline void require_finite(const std::vector<double>& xs, const char* what) {
    for (double x : xs) require_finite(x, what);
}

/* One row of a parameter sweep. status is "ok" or a short failure note; a
   failed point keeps NaN-free placeholder values and a non-ok status. */
struct SweepRow {
    double a = 0.0;
    double b = 0.0;
    double sigma_lower = 0.0;
    double sigma_upper = 0.0;
    double sigma_star = 0.0;
    std::string lower_branch;
    std::string upper_branch;
    std::string status = "ok";
};

inline std::string serialize_bounds(double a, double b, const SigmaBounds& sb, Format f) {
    require_finite(a, "bounds");
    require_finite(b, "bounds");
    require_finite(sb.lower, "bounds");
    require_finite(sb.upper, "bounds");
    if (f == Format::csv) {
        std::ostringstream os;
        os << "a,b,lower,upper,lower_branch,upper_branch\n";
        os << fmt17(a) << ',' << fmt17(b) << ',' << fmt17(sb.lower) << ',' << fmt17(sb.upper)
           << ',' << sb.lower_branch << ',' << sb.upper_branch << '\n';
        return os.str();
    }
    nlohmann::json j{{"a", a},
                     {"b", b},
                     {"lower", sb.lower},
                     {"upper", sb.upper},
                     {"lower_branch", sb.lower_branch},
                     {"upper_branch", sb.upper_branch}};
    return j.dump(2) + "\n";
}

inline std::string serialize_profile(const WaveProfile& w, Format f) {
    require_finite(w.sigma, "profile");
    require_finite(w.theta, "profile");
    require_finite(w.phi, "profile");
    require_finite(w.u, "profile");
    require_finite(w.v, "profile");
    const bool has_u = !w.u.empty(), has_v = !w.v.empty();
    if (f == Format::csv) {
        std::ostringstream os;
        os << "xi,phi";
        if (has_u) os << ",u";
        if (has_v) os << ",v";
        os << '\n';
        for (int i = 0; i <= w.grid.n; ++i) {
            os << fmt17(w.grid.xi(i)) << ',' << fmt17(w.phi[i]);
            if (has_u) os << ',' << fmt17(w.u[i]);
            if (has_v) os << ',' << fmt17(w.v[i]);
            os << '\n';
        }
        return os.str();
    }
    nlohmann::json j{{"alpha", w.grid.alpha}, {"n", w.grid.n},     {"h", w.grid.h()},
                     {"sigma", w.sigma},      {"theta", w.theta},  {"phi", w.phi}};
    if (has_u) j["u"] = w.u;
    if (has_v) j["v"] = w.v;
    return j.dump(2) + "\n";
}

inline std::string serialize_sweep(const std::vector<SweepRow>& rows, Format f) {
    for (const auto& r : rows) {
        require_finite(r.a, "sweep");
        require_finite(r.b, "sweep");
        require_finite(r.sigma_lower, "sweep");
        require_finite(r.sigma_upper, "sweep");
        require_finite(r.sigma_star, "sweep");
    }
    if (f == Format::csv) {
        std::ostringstream os;
        os << "a,b,sigma_lower,sigma_upper,sigma_star,lower_branch,upper_branch,status\n";
        for (const auto& r : rows)
            os << fmt17(r.a) << ',' << fmt17(r.b) << ',' << fmt17(r.sigma_lower) << ','
               << fmt17(r.sigma_upper) << ',' << fmt17(r.sigma_star) << ',' << r.lower_branch
               << ',' << r.upper_branch << ',' << r.status << '\n';
        return os.str();
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"a", r.a},
                       {"b", r.b},
                       {"sigma_lower", r.sigma_lower},
                       {"sigma_upper", r.sigma_upper},
                       {"sigma_star", r.sigma_star},
                       {"lower_branch", r.lower_branch},
                       {"upper_branch", r.upper_branch},
                       {"status", r.status}});
    return arr.dump(2) + "\n";
}

inline SigmaBounds parse_bounds_json(const std::string& text, double* a = nullptr,
                                     double* b = nullptr) {
    auto j = nlohmann::json::parse(text);
    if (a) *a = j.at("a").get<double>();
    if (b) *b = j.at("b").get<double>();
    return SigmaBounds{j.at("lower").get<double>(), j.at("upper").get<double>(),
                       j.at("lower_branch").get<std::string>(),
                       j.at("upper_branch").get<std::string>()};
}

inline WaveProfile parse_profile_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    WaveProfile w;
    w.grid = Grid1D{j.at("alpha").get<double>(), j.at("n").get<int>()};
    w.sigma = j.at("sigma").get<double>();
    w.theta = j.at("theta").get<double>();
    w.phi = j.at("phi").get<std::vector<double>>();
    if (j.contains("u")) w.u = j.at("u").get<std::vector<double>>();
    if (j.contains("v")) w.v = j.at("v").get<std::vector<double>>();
    return w;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string cell;
    while (std::getline(is, cell, ',')) out.push_back(cell);
    return out;
}

inline std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<SweepRow> rows;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) { header = false; continue; }
        auto c = split_csv_line(line);
        if (c.size() != 8) throw error("sweep csv row has " + std::to_string(c.size()) + " columns");
        rows.push_back(SweepRow{std::stod(c[0]), std::stod(c[1]), std::stod(c[2]), std::stod(c[3]),
                                std::stod(c[4]), c[5], c[6], c[7]});
    }
    return rows;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw error("cannot open output file " + path);
    f << content;
}

}  // namespace frontlab
