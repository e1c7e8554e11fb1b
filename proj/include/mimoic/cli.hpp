#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mimoic/bounds.hpp"
#include "mimoic/figures.hpp"
#include "mimoic/fixtures.hpp"
#include "mimoic/io.hpp"
#include "mimoic/ratesplit.hpp"
#include "mimoic/schemes.hpp"
#include "mimoic/verify.hpp"

namespace mimoic::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kVerificationFailed = 2 };

struct CommandSpec {
    std::string command;
    std::string input;
    std::string output_dir;
    std::string format = "csv";
    int trials = 100;
    std::uint64_t seed = 0;
    std::vector<int> dims{1, 1, 1, 1};
    std::vector<double> rho_db;
    std::vector<double> target;
};

namespace detail {

/// `example1` / `example2` pick a built-in channel, text starting with `{` is
/// inline JSON, anything else is a file path.
inline ChannelSpec resolve_input(const CommandSpec& spec) {
    if (spec.input.empty()) throw ParseError("--input is required");
    ChannelSpec ch;
    if (spec.input == "example1") {
        ch = fixtures::example1();
    } else if (spec.input == "example2") {
        ch = fixtures::example2();
    } else if (spec.input.find_first_not_of(" \t\r\n") != std::string::npos &&
               spec.input[spec.input.find_first_not_of(" \t\r\n")] == '{') {
        ch = parse_channel_text(spec.input);
    } else {
        ch = load_channel(spec.input);
    }
    if (!spec.rho_db.empty()) {
        if (spec.rho_db.size() != 4) throw ParseError("--rho-db needs 4 values for this command");
        ch.rho_db = {spec.rho_db[0], spec.rho_db[1], spec.rho_db[2], spec.rho_db[3]};
        const ChannelConfig& c = ch.channel;
        ch.channel = make_channel(c.dims, c.h11, c.h12, c.h21, c.h22, ch.rho_db);
    }
    return ch;
}

inline std::filesystem::path out_dir(const CommandSpec& spec) {
    std::filesystem::path dir = spec.output_dir.empty() ? "." : spec.output_dir;
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write " + path.string());
    f << text;
}

/// JSON to stdout, or to <output-dir>/<name>.json when an output dir is given.
inline void emit_json(const CommandSpec& spec, const std::string& name, const Json& j, std::ostream& out) {
    const std::string text = j.dump(2) + "\n";
    if (spec.output_dir.empty()) {
        out << text;
    } else {
        write_file(out_dir(spec) / (name + ".json"), text);
    }
}

inline void emit_curves(const CommandSpec& spec, const std::string& bundle, const std::vector<figures::Curve>& curves) {
    const auto dir = out_dir(spec);
    if (spec.format == "json") {
        Json j = Json::object();
        for (const auto& c : curves) j[c.name] = to_json(c.points);
        write_file(dir / (bundle + ".json"), j.dump(2) + "\n");
        return;
    }
    for (const auto& c : curves) {
        std::ostringstream os;
        write_csv(os, c.points);
        write_file(dir / (c.name + ".csv"), os.str());
    }
}

inline int cmd_bounds(const CommandSpec& spec, std::ostream& out) {
    emit_json(spec, "bounds", to_json(outer_bound(resolve_input(spec).channel)), out);
    return kOk;
}

inline int cmd_regions(const CommandSpec& spec) {
    const ChannelConfig ch = resolve_input(spec).channel;
    emit_curves(spec, "regions",
                {{"outer", vertices(outer_region(ch))},
                 {"ge", vertices(region_ge(ch, simple_split(ch)))},
                 {"r2", vertices(region_r2(ch))},
                 {"ra", vertices(region_ra(ch))},
                 {"ra_star", vertices(region_ra_star(ch))}});
    return kOk;
}

inline int cmd_gap_check(const CommandSpec& spec, std::ostream& out) {
    const ChannelConfig ch = resolve_input(spec).channel;
    const GapConstants g = gap_constants(ch);
    const RateRegion2D outer = outer_region(ch);
    const double m_ra = gap_margin(outer, region_ra(ch), g.n1, g.n2);
    const double m_star = gap_margin(outer, region_ra_star(ch), g.n1_star, g.n2_star);
    const bool pass = m_ra >= -kDefaultTolerance.geom && m_star >= -kDefaultTolerance.geom;
    emit_json(spec, "gap_check",
              {{"pass", pass},
               {"n", {g.n1, g.n2}},
               {"n_star", {g.n1_star, g.n2_star}},
               {"margin_ra", m_ra},
               {"margin_ra_star", m_star}},
              out);
    return pass ? kOk : kVerificationFailed;
}

inline int cmd_rate_split(const CommandSpec& spec, std::ostream& out) {
    if (spec.target.size() != 2) throw ParseError("rate-split needs --target R1,R2");
    const ChannelConfig ch = resolve_input(spec).channel;
    emit_json(spec, "rate_split", to_json(solve_subrates(ch, {spec.target[0], spec.target[1]})), out);
    return kOk;
}

inline int cmd_reciprocity(const CommandSpec& spec, std::ostream& out) {
    const ChannelConfig ch = resolve_input(spec).channel;
    const RateBoundSet f = outer_bound(ch);
    const RateBoundSet r = outer_bound(reciprocal(ch));
    // reverse-channel bound k is compared with forward bound pair[k]
    const std::array<double, 7> pair{f.b1, f.b2, f.b4, f.b3, f.b5, f.b6, f.b7};
    const auto rv = r.as_array();
    Json deltas = Json::object();
    bool pass = true;
    for (std::size_t k = 0; k < 7; ++k) {
        const double d = rv[k] - pair[k];
        deltas["b" + std::to_string(k + 1)] = d;
        pass = pass && std::abs(d) <= kDefaultTolerance.eq;
    }
    const GapConstants gf = gap_constants(ch);
    const GapConstants gr = gap_constants(reciprocal(ch));
    emit_json(spec, "reciprocity",
              {{"pass", pass},
               {"deltas", deltas},
               {"forward", to_json(f)},
               {"reverse", to_json(r)},
               {"gap", std::max({gf.m1_star, gf.m2_star, gf.n1_star, gf.n2_star})},
               {"reverse_n_star", {gr.n1_star, gr.n2_star}}},
              out);
    return pass ? kOk : kVerificationFailed;
}

inline int cmd_verify(const CommandSpec& spec, std::ostream& out) {
    if (spec.dims.size() != 4) throw ParseError("--dims needs 4 values M1,N1,M2,N2");
    CertifyOptions opt;
    if (!spec.rho_db.empty()) {
        if (spec.rho_db.size() != 2) throw ParseError("--rho-db for verify is a range lo,hi");
        opt.rho_db = {spec.rho_db[0], spec.rho_db[1]};
    }
    const Dims d{spec.dims[0], spec.dims[1], spec.dims[2], spec.dims[3]};
    for (int x : spec.dims) {
        if (x < 1 || x > kMaxDim) throw ParseError("antenna count " + std::to_string(x) + " out of range");
    }
    const VerificationReport rep = certify_theorems(d, spec.trials, spec.seed, opt);
    emit_json(spec, "verify", to_json(rep), out);
    return rep.passed() ? kOk : kVerificationFailed;
}

inline int cmd_figures(const CommandSpec& spec) {
    emit_curves(spec, "figures", figures::all());
    return kOk;
}

}  // namespace detail

inline int run(const CommandSpec& spec, std::ostream& out = std::cout) {
    if (spec.format != "csv" && spec.format != "json") throw ParseError("--format must be csv or json");
    if (spec.command == "bounds") return detail::cmd_bounds(spec, out);
    if (spec.command == "regions") return detail::cmd_regions(spec);
    if (spec.command == "gap-check") return detail::cmd_gap_check(spec, out);
    if (spec.command == "rate-split") return detail::cmd_rate_split(spec, out);
    if (spec.command == "reciprocity") return detail::cmd_reciprocity(spec, out);
    if (spec.command == "verify") return detail::cmd_verify(spec, out);
    if (spec.command == "figures") return detail::cmd_figures(spec);
    throw ParseError("unknown command " + spec.command);
}

/// Parses argv and runs the chosen subcommand. Errors go to `err`.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Rate regions and gap checks for the two-user Gaussian MIMO interference channel"};
    app.require_subcommand(1);
    CommandSpec spec;

    const auto common = [&](CLI::App* sub, bool channel) {
        if (channel) sub->add_option("--input", spec.input, "channel JSON path, inline JSON, example1 or example2");
        sub->add_option("--output-dir", spec.output_dir, "directory for output files");
        sub->add_option("--format", spec.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--rho-db", spec.rho_db, "override rho_db (4 values), or the dB range for verify")
            ->delimiter(',');
    };
    common(app.add_subcommand("bounds", "outer bound set b1..b7 as JSON"), true);
    common(app.add_subcommand("regions", "vertex lists of outer, ge, r2, ra, ra_star"), true);
    common(app.add_subcommand("gap-check", "check both gap claims for one channel"), true);
    auto* split = app.add_subcommand("rate-split", "private/public sub-rates for a target pair");
    common(split, true);
    split->add_option("--target", spec.target, "target rate pair R1,R2")->delimiter(',')->required();
    common(app.add_subcommand("reciprocity", "per-bound deltas against the reciprocal channel"), true);
    auto* verify = app.add_subcommand("verify", "certify gap, reciprocity and containment on random channels");
    common(verify, false);
    verify->add_option("--trials", spec.trials, "number of random channels")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", spec.seed, "base seed");
    verify->add_option("--dims", spec.dims, "M1,N1,M2,N2")->delimiter(',');
    common(app.add_subcommand("figures", "curve data for the example figures"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kInputError;
    }
    spec.command = app.get_subcommands().front()->get_name();
    try {
        return run(spec, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace mimoic::cli
