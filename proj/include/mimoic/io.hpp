#pragma once

// JSON in/out for channels, bounds, sub-rate splits and reports.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mimoic/bounds.hpp"
#include "mimoic/channel.hpp"
#include "mimoic/ratesplit.hpp"
#include "mimoic/verify.hpp"

namespace mimoic {

using Json = nlohmann::json;

struct ChannelSpec {
    ChannelConfig channel;
    std::array<double, 4> rho_db{};
    std::optional<std::uint64_t> seed;
};

namespace detail {

inline CMatrix parse_matrix(const Json& j, int rows, int cols, const std::string& name) {
    if (!j.is_array()) throw ParseError(name + " must be an array");
    // accepted layouts: flat row-major list of [re, im], or a list of rows
    std::vector<const Json*> entries;
    const bool nested = !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array();
    if (nested) {
        for (const auto& row : j) {
            if (!row.is_array()) throw ParseError(name + " rows must be arrays");
            for (const auto& e : row) entries.push_back(&e);
        }
    } else {
        for (const auto& e : j) entries.push_back(&e);
    }
    if (static_cast<int>(entries.size()) != rows * cols) {
        throw DimensionMismatch(name + " has " + std::to_string(entries.size()) + " entries, expected " +
                                std::to_string(rows * cols));
    }
    CMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const Json& e = *entries[r * cols + c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw ParseError(name + " entries must be [re, im] pairs");
            }
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

inline Json matrix_json(const CMatrix& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
    }
    return out;
}

}  // namespace detail

inline ChannelSpec parse_channel(const Json& j) {
    try {
        if (!j.is_object()) throw ParseError("channel spec must be a JSON object");
        for (const char* key : {"dims", "H11", "H12", "H21", "H22", "rho_db"}) {
            if (!j.contains(key)) throw ParseError(std::string("missing field ") + key);
        }
        const auto dv = j.at("dims").get<std::vector<int>>();
        if (dv.size() != 4) throw ParseError("dims must have 4 entries [M1,N1,M2,N2]");
        const auto rv = j.at("rho_db").get<std::vector<double>>();
        if (rv.size() != 4) throw ParseError("rho_db must have 4 entries");
        const Dims d{dv[0], dv[1], dv[2], dv[3]};
        for (int x : dv) {
            if (x < 1 || x > kMaxDim) throw DimensionMismatch("antenna count " + std::to_string(x) + " out of range");
        }
        ChannelSpec spec;
        spec.rho_db = {rv[0], rv[1], rv[2], rv[3]};
        spec.channel = make_channel(d, detail::parse_matrix(j.at("H11"), d.n1, d.m1, "H11"),
                                    detail::parse_matrix(j.at("H12"), d.n2, d.m1, "H12"),
                                    detail::parse_matrix(j.at("H21"), d.n1, d.m2, "H21"),
                                    detail::parse_matrix(j.at("H22"), d.n2, d.m2, "H22"), spec.rho_db);
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        return spec;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("channel spec: ") + e.what());
    }
}

inline ChannelSpec parse_channel_text(const std::string& text) {
    try {
        return parse_channel(Json::parse(text));
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline ChannelSpec load_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_channel_text(ss.str());
}

inline Json channel_json(const ChannelSpec& spec) {
    const ChannelConfig& ch = spec.channel;
    Json j;
    j["dims"] = {ch.dims.m1, ch.dims.n1, ch.dims.m2, ch.dims.n2};
    j["H11"] = detail::matrix_json(ch.h11);
    j["H12"] = detail::matrix_json(ch.h12);
    j["H21"] = detail::matrix_json(ch.h21);
    j["H22"] = detail::matrix_json(ch.h22);
    j["rho_db"] = spec.rho_db;
    if (spec.seed) j["seed"] = *spec.seed;
    return j;
}

inline Json to_json(const RateBoundSet& b) {
    return {{"b1", b.b1}, {"b2", b.b2}, {"b3", b.b3}, {"b4", b.b4}, {"b5", b.b5}, {"b6", b.b6}, {"b7", b.b7}};
}

inline Json to_json(const SubRateSolution& s) {
    return {{"scheme", std::string(to_string(s.scheme))},
            {"r1u", s.rates.r1u},
            {"r1w", s.rates.r1w},
            {"r2u", s.rates.r2u},
            {"r2w", s.rates.r2w}};
}

inline Json to_json(const VerificationReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back({{"seed", f.seed}, {"detail", f.detail}});
    Json j{{"name", r.name}, {"trials", r.trials}, {"passed", r.passed()}, {"failures", failures}};
    j["worst_margin"] = std::isfinite(r.worst_margin) ? Json(r.worst_margin) : Json(nullptr);
    j["stats"] = r.stats;
    return j;
}

inline Json to_json(const std::vector<RatePair>& pts) {
    Json out = Json::array();
    for (const auto& p : pts) out.push_back({p.r1, p.r2});
    return out;
}

}  // namespace mimoic
