#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mimoic/cli.hpp"

using namespace mimoic;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "mimoic_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("mimoic_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<RatePair> load_csv(const fs::path& p) {
    std::ifstream f(p);
    return read_csv(f);
}

const std::string kExample2 = std::string(MIMOIC_DATA_DIR) + "/example2.json";

}  // namespace

TEST_CASE("shipped fixtures match the built-in channels", "[cli]") {
    const ChannelSpec a = load_channel(std::string(MIMOIC_DATA_DIR) + "/example2.json");
    const ChannelSpec b = fixtures::example2();
    CHECK(a.channel.h11 == b.channel.h11);
    CHECK(a.channel.h22 == b.channel.h22);
    CHECK(a.rho_db == b.rho_db);
    const ChannelSpec c = load_channel(std::string(MIMOIC_DATA_DIR) + "/example1.json");
    CHECK(c.channel.h12(0, 0) == Complex(25, 0));
}

TEST_CASE("channel JSON round trip and layouts", "[cli]") {
    const ChannelSpec ex2 = fixtures::example2();
    const ChannelSpec back = parse_channel(channel_json(ex2));
    CHECK(back.channel.h21 == ex2.channel.h21);
    CHECK(back.channel.rho == ex2.channel.rho);

    const ChannelSpec nested = parse_channel_text(R"({"dims":[2,1,1,1],"H11":[[[1,0],[0,1]]],"H12":[[[2,0],[0,0]]],
        "H21":[[1,1]],"H22":[[3,0]],"rho_db":[0,0,0,0],"seed":5})");
    CHECK(nested.channel.h11(0, 1) == Complex(0, 1));
    CHECK(nested.seed == 5u);

    CHECK_THROWS_AS(parse_channel_text("{"), ParseError);
    CHECK_THROWS_AS(parse_channel_text(R"({"dims":[1,1,1,1]})"), ParseError);
    CHECK_THROWS_AS(parse_channel_text(R"({"dims":[1,1,1,1],"H11":[[1,0]],"H12":[[1,0]],"H21":[[1,0]],
        "H22":[[1,0],[2,0]],"rho_db":[0,0,0,0]})"),
                    DimensionMismatch);
    CHECK_THROWS_AS(parse_channel_text(R"({"dims":[1,1,1,1],"H11":[["a",0]],"H12":[[1,0]],"H21":[[1,0]],
        "H22":[[1,0]],"rho_db":[0,0,0,0]})"),
                    ParseError);
}

TEST_CASE("bounds command", "[cli]") {
    const Result r = run({"bounds", "--input", kExample2});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    for (const char* k : {"b1", "b2", "b3", "b4", "b5", "b6", "b7"}) CHECK(j.contains(k));
    CHECK(j["b1"].get<double>() == Catch::Approx(outer_bound(fixtures::example2().channel).b1));

    const Result inline_json = run({"bounds", "--input", std::string(fixtures::kExample1Json)});
    CHECK(inline_json.code == 0);
    const Result override_rho = run({"bounds", "--input", "example1", "--rho-db", "10,0,0,0"});
    CHECK(Json::parse(override_rho.out)["b1"].get<double>() == Catch::Approx(std::log2(1 + 20250.0)));
}

TEST_CASE("regions command writes five CSVs that round trip", "[cli]") {
    const fs::path dir = scratch("regions");
    REQUIRE(run({"regions", "--input", kExample2, "--output-dir", dir.string()}).code == 0);
    const ChannelConfig ch = fixtures::example2().channel;
    const std::vector<std::pair<std::string, RateRegion2D>> expect{{"outer", outer_region(ch)},
                                                                   {"ge", region_ge(ch, simple_split(ch))},
                                                                   {"r2", region_r2(ch)},
                                                                   {"ra", region_ra(ch)},
                                                                   {"ra_star", region_ra_star(ch)}};
    for (const auto& [name, region] : expect) {
        const auto pts = load_csv(dir / (name + ".csv"));
        CHECK(pts.size() == vertices(region).size());
        for (const auto& p : pts) CHECK(contains(region, p));
    }
    for (const auto& p : load_csv(dir / "ge.csv")) CHECK(contains(outer_region(ch), p));

    const fs::path jdir = scratch("regions_json");
    REQUIRE(run({"regions", "--input", "example2", "--output-dir", jdir.string(), "--format", "json"}).code == 0);
    const Json j = Json::parse(slurp(jdir / "regions.json"));
    CHECK(j.size() == 5);
}

TEST_CASE("gap-check command", "[cli]") {
    const Result r = run({"gap-check", "--input", kExample2});
    const Json j = Json::parse(r.out);
    CHECK(j.contains("margin_ra"));
    CHECK(r.code == (j["pass"].get<bool>() ? 0 : 2));
}

TEST_CASE("rate-split command", "[cli]") {
    const Result r = run({"rate-split", "--input", kExample2, "--target", "1,1"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["scheme"] == "Simple");
    CHECK(j["r1u"].get<double>() + j["r1w"].get<double>() == Catch::Approx(1.0));

    CHECK(run({"rate-split", "--input", kExample2, "--target", "100,0"}).code == 1);
    CHECK(run({"rate-split", "--input", kExample2}).code == 1);
}

TEST_CASE("reciprocity command", "[cli]") {
    const Result r = run({"reciprocity", "--input", kExample2});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(std::abs(j["deltas"]["b3"].get<double>()) < 1e-9);
}

TEST_CASE("verify command", "[cli]") {
    const fs::path dir = scratch("verify");
    const Result r = run({"verify", "--dims", "1,1,1,1", "--trials", "100", "--seed", "7", "--output-dir", dir.string()});
    const Json j = Json::parse(slurp(dir / "verify.json"));
    CHECK(j["trials"] == 100);
    CHECK(r.code == (j["passed"].get<bool>() ? 0 : 2));
    CHECK(j["stats"]["reciprocity_failures"] == 0.0);
    CHECK(j["stats"]["containment_failures"] == 0.0);

    const fs::path dir2 = scratch("verify2");
    run({"verify", "--dims", "1,1,1,1", "--trials", "100", "--seed", "7", "--output-dir", dir2.string()});
    CHECK(slurp(dir / "verify.json") == slurp(dir2 / "verify.json"));
}

TEST_CASE("figures command is deterministic", "[cli]") {
    const fs::path a = scratch("fig_a");
    const fs::path b = scratch("fig_b");
    REQUIRE(run({"figures", "--output-dir", a.string()}).code == 0);
    REQUIRE(run({"figures", "--output-dir", b.string()}).code == 0);
    int files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        ++files;
        CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    }
    CHECK(files == 16);
    CHECK(load_csv(a / "fig2_point_s.csv").size() == 1);
    CHECK(load_csv(a / "fig4_point_a.csv").size() == 1);
    CHECK(load_csv(a / "fig6b_point_a.csv").size() == 1);
}

TEST_CASE("input errors exit with 1", "[cli]") {
    CHECK(run({}).code == 1);
    CHECK(run({"bounds"}).code == 1);
    CHECK(run({"bounds", "--input", "/nonexistent/channel.json"}).code == 1);
    CHECK(run({"bounds", "--input", "{not json"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"verify", "--dims", "1,1,1"}).code == 1);
    CHECK(run({"regions", "--input", "example2", "--format", "xml"}).code == 1);
}
