#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "voa/report.hpp"

using namespace voa;

TEST_CASE("empty report renders") {
    SuiteReport r;
    r.suite = "empty";
    r.presentation_hash = "0000000000000000";
    CHECK(r.passed());
    CHECK(render_text(r).find("OK 0 passed") != std::string::npos);
    auto j = nlohmann::json::parse(render_json(r));
    CHECK(j["items"].is_array());
    CHECK(j["items"].empty());
    CHECK(j["passed"] == true);
}

TEST_CASE("failing item carries its residual and flips the exit state") {
    SuiteReport r;
    r.suite = "demo";
    r.items.push_back(CheckItem::fail("x", "x = y", "(1)*:e' e:"));
    CHECK(!r.passed());
    std::string text = render_text(r);
    CHECK(text.find("FAIL x") != std::string::npos);
    CHECK(text.find(":e' e:") != std::string::npos);
    auto j = nlohmann::json::parse(render_json(r));
    CHECK(j["items"][0]["status"] == "fail");
    CHECK(j["items"][0]["residual"] == "(1)*:e' e:");
}

TEST_CASE("json round-trips through the documented schema fields") {
    SuiteConfig cfg;
    cfg.order = 6;
    SuiteReport r = run_suite("ope-lc", cfg);
    auto j = nlohmann::json::parse(render_json(r));
    for (const char* key :
         {"schema_version", "suite", "presentation_hash", "config", "passed", "elapsed_ms",
          "items"})
        CHECK(j.contains(key));
    CHECK(j["schema_version"] == 1);
    CHECK(j["presentation_hash"].get<std::string>().size() == 16);
    for (const auto& item : j["items"]) {
        CHECK(item.contains("label"));
        CHECK(item.contains("anchor"));
        std::string st = item["status"];
        CHECK((st == "pass" || st == "fail" || st == "flagged"));
    }
}

TEST_CASE("text output is deterministic for a fixed configuration") {
    SuiteConfig cfg;
    cfg.order = 6;
    SuiteReport a = run_suite("limit-a-infinity", cfg);
    SuiteReport b = run_suite("limit-a-infinity", cfg);
    CHECK(render_text(a) == render_text(b));
}

TEST_CASE("unknown suite surfaces as a failed item, not a crash") {
    SuiteConfig cfg;
    SuiteReport r = run_suite("no-such-suite", cfg);
    CHECK(!r.passed());
    CHECK(r.items.size() == 1);
}

TEST_CASE("suite names are stable") {
    const auto& names = suite_names();
    CHECK(names.size() == 7);
    CHECK(names.front() == "validate-presentations");
    CHECK(names.back() == "char");
}
