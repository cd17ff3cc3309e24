#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lorentz/scenario.hpp"

using namespace lorentz;

TEST_CASE("catalog contents and determinism") {
    Catalog a = list_builtins();
    Catalog b = list_builtins();
    auto names = [](const std::vector<CatalogEntry>& v) {
        std::vector<std::string> out;
        for (const auto& e : v) out.push_back(e.name);
        return out;
    };
    CHECK(names(a.models) == names(b.models));
    CHECK(names(a.suites) == names(b.suites));

    auto has = [&](const std::vector<CatalogEntry>& v, const std::string& n) {
        for (const auto& e : v)
            if (e.name == n) return true;
        return false;
    };
    CHECK(has(a.models, "minkowski"));
    CHECK(has(a.models, "de-sitter-grw"));
    CHECK(has(a.models, "anti-de-sitter-grw"));
    CHECK(has(a.suites, "simons-great-circle"));
    CHECK(has(a.suites, "desitter-slice-suite"));
}

TEST_CASE("every catalog check resolves to a handler and an operation") {
    Catalog cat = list_builtins();
    for (const auto& chk : cat.checks) {
        json config = {
            {"schema_version", 1},
            {"id", "probe"},
            {"ambient", {{"builtin", "minkowski"}}},
            {"checks", json::array({{{"name", "x"}, {"op", chk.name}}})},
        };
        // must not raise UnknownCheck; other errors (missing refs) are fine
        try {
            run_scenario_json(config);
        } catch (const Error& e) {
            CHECK(e.code() != ErrorCode::UnknownCheck);
        }
        CHECK_FALSE(chk.description.empty());
    }
}

TEST_CASE("built-in flat suite passes end to end") {
    Report rep = run_scenario_json(builtin_scenario("minkowski-flat-suite"));
    CHECK(rep.all_pass);
    CHECK(rep.document["verdict"] == "pass");
    for (const json& c : rep.document["checks"]) CHECK(c["status"] == "pass");
}

TEST_CASE("error paths of run_scenario") {
    // unresolved field reference
    json config = {
        {"schema_version", 1},
        {"id", "bad-ref"},
        {"ambient", {{"builtin", "minkowski"}}},
        {"checks", json::array({{{"name", "c"}, {"op", "conformal-certify"}, {"field", "nope"}}})},
    };
    Report rep = run_scenario_json(config);
    CHECK_FALSE(rep.all_pass); // the failing check reports the unresolved name
    CHECK(rep.document["checks"][0]["detail"].get<std::string>().find("UnresolvedReference") !=
          std::string::npos);

    // unknown operation
    json config2 = config;
    config2["checks"][0]["op"] = "no-such-op";
    CHECK_THROWS_AS(run_scenario_json(config2), Error);

    // empty checks: pass with a warning
    json config3 = {{"schema_version", 1}, {"id", "empty"}, {"ambient", {{"builtin", "minkowski"}}}};
    Report rep3 = run_scenario_json(config3);
    CHECK(rep3.all_pass);
    CHECK(rep3.document.contains("warning"));

    // expected-error checks pass when the declared error is raised
    json config4 = {
        {"schema_version", 1},
        {"id", "expected-error"},
        {"ambient", {{"builtin", "de-sitter-grw"}}},
        {"fields", json::array({{{"name", "S"}, {"kind", "warp-dt"}, {"fn", "sinh"}}})},
        {"immersions", json::array({{{"name", "eq"}, {"kind", "grw-slice"}, {"t0", 1e-12}}})},
        {"checks", json::array({{{"name", "equator-rejects"},
                                 {"op", "stability-probe"},
                                 {"immersion", "eq"},
                                 {"field", "S"},
                                 {"expect_error", "SingularV"}}})},
    };
    Report rep4 = run_scenario_json(config4);
    CHECK(rep4.all_pass);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    json config = builtin_scenario("minkowski-flat-suite");
    Report a = run_scenario_json(config);
    Report b = run_scenario_json(config);
    CHECK(scrub_volatile(a.document).dump() == scrub_volatile(b.document).dump());

    // different seeds change the sampled residuals but not the schema
    config["seed"] = 777;
    Report c = run_scenario_json(config);
    CHECK(c.document["checks"].size() == a.document["checks"].size());
}

TEST_CASE("report emission") {
    Report rep = run_scenario_json(builtin_scenario("minkowski-flat-suite"));
    std::string text = emit_report(rep, "text");
    CHECK(text.find("verdict: pass") != std::string::npos);
    std::string js = emit_report(rep, "json");
    json parsed = json::parse(js);
    CHECK(parsed["verdict"] == "pass");
    // 17-significant-digit decimal strings round-trip through the parser
    for (const json& c : parsed["checks"])
        for (auto& [k, v] : c["residuals"].items()) {
            double x = std::stod(v.get<std::string>());
            CHECK(format_residual(x) == v.get<std::string>());
        }
    CHECK_THROWS_AS(emit_report(rep, "yaml"), Error);
}

TEST_CASE("config parse failures") {
    CHECK_THROWS_AS(run_scenario_file("/nonexistent/path.json"), Error);
    json no_id = {{"schema_version", 1}};
    CHECK_THROWS_AS(run_scenario_json(no_id), Error);
    json bad_version = {{"schema_version", 2}, {"id", "x"}};
    CHECK_THROWS_AS(run_scenario_json(bad_version), Error);
}

TEST_CASE("thread cap does not change results") {
    json config = builtin_scenario("minkowski-flat-suite");
    setenv("LORENTZ_VERIFY_THREADS", "1", 1);
    Report serial = run_scenario_json(config);
    setenv("LORENTZ_VERIFY_THREADS", "2", 1);
    Report threaded = run_scenario_json(config);
    unsetenv("LORENTZ_VERIFY_THREADS");
    CHECK(scrub_volatile(serial.document).dump() == scrub_volatile(threaded.document).dump());
}
