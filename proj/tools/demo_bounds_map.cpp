// Tabulates the analytic speed bounds and the shooting value of sigma* for
// the three panels b = 0, 5, 40 over a in [0, 40], writing one CSV per panel.
// Output matches the `sweep` subcommand of the CLI.

#include <cstdio>
#include <string>
#include <vector>

#include "frontlab/bounds.hpp"
#include "frontlab/serialize.hpp"
#include "frontlab/shooting.hpp"

int main() {
    using namespace frontlab;
    for (double b : {0.0, 5.0, 40.0}) {
        std::vector<SweepRow> rows;
        for (int a = 0; a <= 40; ++a) {
            SweepRow row;
            row.a = a;
            row.b = b;
            ModelParams p{static_cast<double>(a), b, 0.0};
            SigmaBounds sb = sigma_bounds(p);
            row.sigma_lower = sb.lower;
            row.sigma_upper = sb.upper;
            row.lower_branch = sb.lower_branch;
            row.upper_branch = sb.upper_branch;
            row.sigma_star = sigma_star(p).sigma_star;
            rows.push_back(row);
        }
        const std::string path = "bounds_map_b" + std::to_string(static_cast<int>(b)) + ".csv";
        write_file(path, serialize_sweep(rows, Format::csv));
        std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
    }
    return 0;
}
