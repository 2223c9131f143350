#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "esper/errors.hpp"
#include "esper/pipeline.hpp"

using namespace esper;
using namespace esper::pipeline;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("esper-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

ExperimentConfig small_config(const std::filesystem::path& cache) {
    ExperimentConfig cfg = parse_config_text(R"(
[family]
catalog = gamma2-legendre
ell = 3,5,7
action = cayley

[solver]
tol = 1e-9

[chain]
c_B = 1.0
)");
    cfg.cache_dir = cache.string();
    return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = parse_config_text(R"(
# comment
[family]
catalog = sl2-elementary
ell = 3..13        ; primes in range
action = projective-line
basepoint = default

[solver]
tol = 1e-8
max_iter = 1000
dense_threshold = 500
cap = 100000

[metrics]
diameter = true
predicates = false

[chain]
c_B = 0.5
A_grid = 0:1:3

[output]
record = out/record.json
)");
    CHECK(cfg.catalog == "sl2-elementary");
    CHECK(cfg.ells == std::vector<std::uint32_t>{3, 5, 7, 11, 13});
    CHECK(cfg.action == "projective-line");
    CHECK(cfg.tol == 1e-8);
    CHECK(cfg.max_iter == 1000);
    CHECK(cfg.dense_threshold == 500);
    CHECK(cfg.cap == 100000);
    CHECK(cfg.diameter);
    CHECK_FALSE(cfg.predicates);
    CHECK(cfg.burger_constant == 0.5);
    CHECK(cfg.a_grid == std::vector<double>{0, 1, 2, 3});
    CHECK(cfg.record_path == "out/record.json");
    CHECK(cfg.family_id == "sl2-elementary-projective-line");
    cfg.validate();
}

TEST_CASE("config validation failures") {
    auto base = small_config(fresh_dir("cfg"));
    CHECK_THROWS_AS([&] { auto c = base; c.ells.clear(); c.validate(); }(), config_error);
    CHECK_THROWS_AS([&] { auto c = base; c.catalog = "nope"; c.validate(); }(), config_error);
    CHECK_THROWS_AS([&] { auto c = base; c.tol = 0; c.validate(); }(), config_error);
    CHECK_THROWS_AS([&] { auto c = base; c.action = "nope"; c.validate(); }(), config_error);
    const std::vector<double> unsorted_grid{1.0, 0.5};
    CHECK_THROWS_AS([&] { auto c = base; c.a_grid = unsorted_grid; c.validate(); }(), config_error);
    CHECK_THROWS_AS([&] { auto c = base; c.burger_constant = -1; c.validate(); }(), config_error);
    CHECK_THROWS_AS(parse_config_text("[family]\nell = 4\n"), config_error);
    CHECK_THROWS_AS(parse_config_text("[family]\nunknown_key = 1\n"), config_error);
}

TEST_CASE("run_experiment sweeps a small family end to end") {
    const auto cache = fresh_dir("run");
    const auto result = run_experiment(small_config(cache));
    CHECK(result.failed_members == 0);

    const auto& body = result.record["body"];
    REQUIRE(body["members"].size() == 3);
    const std::vector<std::int64_t> expected_genus{2, 27, 65};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& m = body["members"][i];
        CHECK(m["connected"].get<bool>());
        CHECK(m["lambda1"]["value"].get<double>() > 0);
        CHECK(m["dsc"]["pass"].get<bool>());
        CHECK(m["predicates"]["order_ell_generated"].get<bool>());
        CHECK(m["genus"]["genus"].get<std::int64_t>() == expected_genus[i]);
    }
    // ell = 3 is not perfect, 5 and 7 are
    CHECK_FALSE(body["members"][0]["predicates"]["perfect"].get<bool>());
    CHECK(body["members"][1]["predicates"]["perfect"].get<bool>());

    REQUIRE(body["family"].contains("fit"));
    CHECK(body["family"]["fit"]["constant"].get<double>() > 0);
    REQUIRE(body["family"].contains("certificates"));
    for (const auto& cert : body["family"]["certificates"]) {
        CHECK(cert["replay_deviation"].get<double>() <= 1e-12);
    }
    REQUIRE(body["family"].contains("genus_growth"));
    CHECK(body["family"]["genus_growth"]["min"].get<double>() > 0);

    REQUIRE(body["family"].contains("kelner"));
    CHECK(body["family"]["kelner"]["max_ratio"].get<double>() > 0);
    CHECK(body["family"]["kelner"]["ratios"].size() == 3);
}

TEST_CASE("identical configs replay byte-identically from cache") {
    const auto cache = fresh_dir("determinism");
    const auto cfg = small_config(cache);
    const auto first = run_experiment(cfg);
    const auto second = run_experiment(cfg);
    CHECK(first.record["body"].dump() == second.record["body"].dump());
    CHECK(second.record["run"]["cache_hits"].get<int>() == 3);
    CHECK(first.record["run"]["cache_hits"].get<int>() == 0);
}

TEST_CASE("per-member failures are recorded, not fatal") {
    const auto cache = fresh_dir("partial");
    auto cfg = small_config(cache);
    cfg.ells = {3, 5, 31};
    cfg.cap = 5000;  // SL2(F_31) has 29760 elements
    const auto result = run_experiment(cfg);
    CHECK(result.failed_members == 1);
    const auto& members = result.record["body"]["members"];
    REQUIRE(members.size() == 3);
    CHECK_FALSE(members[0].contains("error"));
    CHECK_FALSE(members[1].contains("error"));
    CHECK(members[2].contains("error"));
    CHECK(members[2]["error"].get<std::string>().find("cap") != std::string::npos);
    // the family fit still uses the surviving members
    CHECK(result.record["body"]["family"].contains("fit"));
}

TEST_CASE("schreier sweep records interlacing against the parent") {
    const auto cache = fresh_dir("interlace");
    auto cfg = small_config(cache);
    cfg.action = "projective-line";
    cfg.ells = {5, 7, 11};
    const auto result = run_experiment(cfg);
    CHECK(result.failed_members == 0);
    for (const auto& m : result.record["body"]["members"]) {
        REQUIRE(m.contains("interlacing"));
        CHECK(m["interlacing"]["pass"].get<bool>());
    }
}

TEST_CASE("reports render in the three formats") {
    const auto cache = fresh_dir("report");
    const auto result = run_experiment(small_config(cache));

    const std::string tabular = render_report(result.record, ReportFormat::tabular);
    CHECK(tabular.find("# esper-record schema=1") == 0);
    CHECK(tabular.find("ell,n,r,lambda1,residual,diam,perfect,order_ell_gen,genus,dsc_pass,"
                       "interlace_pass") != std::string::npos);
    CHECK(std::count(tabular.begin(), tabular.end(), '\n') == 5);  // banner + header + 3 rows

    const std::string structured = render_report(result.record, ReportFormat::structured);
    CHECK(json::parse(structured)["schema_version"].get<int>() == kSchemaVersion);

    const std::string plot = render_report(result.record, ReportFormat::plotdata);
    CHECK(plot.find("# esper-plotdata") == 0);

    const auto out = fresh_dir("report-out") / "table.csv";
    write_report(result.record, ReportFormat::tabular, out);
    CHECK(std::filesystem::exists(out));
}

TEST_CASE("tabular report of an empty record is header-only") {
    json record{{"schema_version", kSchemaVersion},
                {"body", json{{"members", json::array()}, {"family", json::object()}}}};
    const std::string tabular = render_report(record, ReportFormat::tabular);
    CHECK(std::count(tabular.begin(), tabular.end(), '\n') == 2);
}

TEST_CASE("plotdata of the synthetic 1/log family lies on the reference curve") {
    json members = json::array();
    for (std::size_t n : {8u, 64u, 512u, 4096u}) {
        const double lambda = 1.0 / std::log(2.0 * double(n));
        members.push_back(json{{"ell", 0}, {"n", n}, {"lambda1", json{{"value", lambda}}}});
    }
    json record{
        {"schema_version", kSchemaVersion},
        {"body", json{{"members", members},
                      {"family", json{{"fit", json{{"exponent", 1.0}, {"constant", 1.0}}}}}}}};
    const std::string plot = render_report(record, ReportFormat::plotdata);

    std::istringstream lines(plot);
    std::string line;
    int points = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        double x, y, yref;
        fields >> x >> y >> yref;
        CHECK(std::abs(y - yref) <= 1e-10);
        ++points;
    }
    CHECK(points == 4);
}

TEST_CASE("cache gc removes stale entries") {
    const auto dir = fresh_dir("gc");
    {
        std::ofstream current(dir / "aaaa.json");
        current << json{{"schema_version", kSchemaVersion}, {"cache_key", "aaaa"}}.dump();
        std::ofstream stale(dir / "bbbb.json");
        stale << json{{"schema_version", kSchemaVersion - 1}}.dump();
        std::ofstream garbage(dir / "cccc.json");
        garbage << "not json";
    }
    const auto stats = cache_gc(dir, false);
    CHECK(stats.scanned == 3);
    CHECK(stats.removed == 2);
    CHECK(std::filesystem::exists(dir / "aaaa.json"));

    const auto wipe = cache_gc(dir, true);
    CHECK(wipe.removed == 1);
}

TEST_CASE("cache directory environment override") {
    auto cfg = small_config(fresh_dir("envdir"));
    setenv("ESPER_CACHE_DIR", "/tmp/esper-env-cache", 1);
    CHECK(resolve_cache_dir(cfg) == std::filesystem::path("/tmp/esper-env-cache"));
    unsetenv("ESPER_CACHE_DIR");
    CHECK(resolve_cache_dir(cfg) == std::filesystem::path(cfg.cache_dir));
}
