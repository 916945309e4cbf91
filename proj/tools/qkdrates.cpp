// Copyright 2026 The qkdrates developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkdrates/channel.hpp"
#include "qkdrates/errors.hpp"
#include "qkdrates/io.hpp"
#include "qkdrates/optimize.hpp"
#include "qkdrates/rates.hpp"
#include "qkdrates/version.hpp"

namespace {

using namespace qkdrates;

void print_matrix(std::ostream& os, const std::string& label, const Mat3& m) {
    os << label << ":\n";
    for (int r = 0; r < 3; ++r) {
        os << "  [";
        for (int c = 0; c < 3; ++c) os << (c ? " " : "") << format_g17(m(r, c));
        os << "]\n";
    }
}

// The closed forms hold for exactly unital channels; the flag only widens the
// acceptance gate for measured (noisy) bias tables. Past the gate, t is
// projected to zero. Complete positivity is each operation's own concern:
// the six-state rates demand it, the BB84 ones only need a contraction.
QubitChannel gate_unital(const QubitChannel& c, double unital_tol) {
    if (c.t.norm() > unital_tol) {
        throw NotUnital("channel is not unital: |t| = " + std::to_string(c.t.norm()));
    }
    QubitChannel out = c;
    out.t = Vec3::Zero();
    return out;
}

int run_validate(const std::string& path, double unital_tol) {
    const ChannelSpec spec = load_channel_spec(path);
    std::cout << "source: " << spec.source << "\n";
    print_matrix(std::cout, "R", spec.channel.r);
    std::cout << "t: [" << format_g17(spec.channel.t[0]) << " " << format_g17(spec.channel.t[1])
              << " " << format_g17(spec.channel.t[2]) << "]\n";
    const PauliDistribution q = pauli_distribution(signed_svd3(spec.channel.r).e);
    std::cout << "bell weights of the diagonal core: q_i=" << format_g17(q.q_i)
              << " q_z=" << format_g17(q.q_z) << " q_x=" << format_g17(q.q_x)
              << " q_y=" << format_g17(q.q_y) << "\n";
    try {
        validate_unital_cp(spec.channel, unital_tol);
    } catch (const NotUnital& e) {
        std::cout << "verdict: invalid (" << e.what() << ")\n";
        return 2;
    } catch (const NotCompletelyPositive& e) {
        std::cout << "verdict: invalid (" << e.what() << ")\n";
        std::cout << "offending weight: " << format_g17(e.offending_weight) << "\n";
        return 2;
    }
    std::cout << "verdict: valid\n";
    return 0;
}

int run_report(const std::string& path, double unital_tol, const SearchConfig& search,
               const std::string& format) {
    ChannelSpec spec = load_channel_spec(path);
    spec.channel = gate_unital(spec.channel, unital_tol);
    const RateReport rep = full_report(spec.channel, search);
    ReportConfig cfg;
    cfg.unital_tol = unital_tol;
    cfg.search = search;
    cfg.format = format;
    if (format == "csv") {
        std::cout << report_to_csv(rep, rate_column_names());
    } else {
        std::cout << report_to_json(spec, rep, cfg);
    }
    return 0;
}

int run_sweep(const std::string& family, const std::string& param, double from, double to,
              int steps, const std::string& settings, const std::string& out_path,
              double unital_tol, const SearchConfig& search) {
    const std::vector<std::string> columns = select_columns(settings);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw ParseError("cannot open output file \"" + out_path + "\"");
        os = &file;
    }
    *os << sweep_header(columns);
    for (int i = 0; i < steps; ++i) {
        const double value =
            steps == 1 ? from : from + (to - from) * static_cast<double>(i) / (steps - 1);
        const std::string doc = "{\"family\":{\"name\":\"" + family + "\",\"params\":{\"" +
                                param + "\":" + format_g17(value) + "}}}";
        ChannelSpec spec = parse_channel_spec_text(doc);
        spec.channel = gate_unital(spec.channel, unital_tol);
        *os << sweep_row(value, full_report(spec.channel, search), columns);
    }
    return 0;
}

int run_compensate(const std::string& path, const std::string& setting, double unital_tol) {
    ChannelSpec spec = load_channel_spec(path);
    spec.channel = gate_unital(spec.channel, unital_tol);
    const QubitChannel& c = spec.channel;

    RateValue rate;
    CompensationPlan plan;
    std::optional<std::pair<double, double>> s_star;
    if (setting == "f1") {
        std::tie(rate, plan) = six_state_F1_plan(c);
    } else if (setting == "f2") {
        std::tie(rate, plan) = six_state_F2(c);
    } else if (setting == "g1") {
        std::tie(rate, plan) = bb84_G1_plan(c);
    } else if (setting == "g2") {
        std::tie(rate, plan) = bb84_G2(c);
    } else if (setting == "j1") {
        const J1Result j1 = bb84_J1(c);
        rate = j1.rate;
        plan = j1.plan;
        s_star = {{j1.s1_star, j1.s2_star}};
    } else {
        std::tie(rate, plan) = bb84_J2(c);
    }

    std::cout << "setting: " << setting << "\n";
    std::cout << "restriction: " << (plan.restriction == Restriction::zx_plane ? "zx_plane" : "full")
              << "\n";
    if (plan.oa.has_value()) print_matrix(std::cout, "oa", *plan.oa);
    print_matrix(std::cout, "ob", plan.ob);
    const QubitChannel composed = compose(c, plan.oa, plan.ob);
    print_matrix(std::cout, "compensated R", composed.r);
    if (s_star.has_value()) {
        std::cout << "s1* = " << format_g17(s_star->first) << "\n";
        std::cout << "s2* = " << format_g17(s_star->second) << "\n";
    }
    if (plan.degenerate) std::cout << "warning: degenerate columns; rotation completed arbitrarily\n";
    std::cout << "rate raw = " << format_g17(rate.raw) << "\n";
    std::cout << "rate clamped = " << format_g17(rate.clamped) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimized key generation rates for qubit channels"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string spec_path;
    double unital_tol = kUnitalTol;
    SearchConfig search;
    std::string format = "json";

    CLI::App* validate = app.add_subcommand("validate", "Parse and validate a channel spec");
    validate->add_option("spec", spec_path, "channel spec JSON path")->required();
    validate->add_option("--unital-tol", unital_tol, "acceptable |t| for unital channels");

    CLI::App* report = app.add_subcommand("report", "All twelve optimized rates for one channel");
    report->add_option("spec", spec_path, "channel spec JSON path")->required();
    report->add_option("--unital-tol", unital_tol, "acceptable |t| for unital channels");
    report->add_option("--opt-grid", search.coarse_grid, "coarse grid points per Euler angle")
        ->check(CLI::Range(2, 256));
    report->add_option("--seed", search.seed, "seed for optimizer restarts");
    report->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string family, param_key, settings, out_path;
    double from = 0, to = 0;
    int steps = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "Rate curves over a one-parameter family");
    sweep->add_option("--family", family, "channel family name")->required();
    sweep->add_option("--param", param_key, "family parameter to sweep")->required();
    sweep->add_option("--from", from, "first parameter value")->required();
    sweep->add_option("--to", to, "last parameter value")->required();
    sweep->add_option("--steps", steps, "number of rows")->required()->check(CLI::Range(1, 1000000));
    sweep->add_option("--settings", settings, "comma-separated rate columns (default: all)");
    sweep->add_option("--out", out_path, "output CSV path (default: stdout)");
    sweep->add_option("--unital-tol", unital_tol, "acceptable |t| for unital channels");
    sweep->add_option("--opt-grid", search.coarse_grid, "coarse grid points per Euler angle")
        ->check(CLI::Range(2, 256));
    sweep->add_option("--seed", search.seed, "seed for optimizer restarts");

    std::string setting;
    CLI::App* compensate =
        app.add_subcommand("compensate", "Optimal compensation rotations for one setting");
    compensate->add_option("spec", spec_path, "channel spec JSON path")->required();
    compensate->add_option("--setting", setting, "rate setting")
        ->required()
        ->check(CLI::IsMember({"f1", "f2", "g1", "g2", "j1", "j2"}));
    compensate->add_option("--unital-tol", unital_tol, "acceptable |t| for unital channels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (validate->parsed()) return run_validate(spec_path, unital_tol);
        if (report->parsed()) return run_report(spec_path, unital_tol, search, format);
        if (sweep->parsed()) {
            return run_sweep(family, param_key, from, to, steps, settings, out_path, unital_tol,
                             search);
        }
        return run_compensate(spec_path, setting, unital_tol);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const AssertionFailure& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "invalid channel: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
