#include <doctest.h>

#include "matchkit/report.hpp"
#include "matchkit/verify.hpp"

using namespace matchkit;

TEST_CASE("json reports keep the field order and round trip") {
    VerdictReport r;
    r.command = "group.match";
    r.instance = "group=Z5 A={1,2} B={1,2}";
    r.verdict = "true";
    r.certificate = {{"type", "matching"}};
    r.elapsed_ms = 3;
    r.seed = 42;
    auto line = render(r, ReportFormat::Json);
    CHECK(line.find("\"command\"") < line.find("\"instance\""));
    CHECK(line.find("\"instance\"") < line.find("\"verdict\""));
    CHECK(line.find("\"verdict\"") < line.find("\"certificate\""));
    CHECK(line.find("\"certificate\"") < line.find("\"elapsed_ms\""));
    CHECK(line.find("\"elapsed_ms\"") < line.find("\"seed\""));
    CHECK(line.find("\"seed\"") < line.find("\"engine_version\""));

    auto parsed = nlohmann::json::parse(line);
    CHECK(parsed["command"] == "group.match");
    CHECK(parsed["seed"] == 42);
    CHECK(parsed["engine_version"] == kEngineVersion);
}

TEST_CASE("csv escaping") {
    VerdictReport r;
    r.command = "group.match";
    r.instance = "group=Z5 A={1,2} B=\"quoted\"";
    r.verdict = "true";
    r.certificate = {{"k", "v"}};
    auto line = render(r, ReportFormat::Csv);
    CHECK(line.find("\"\"quoted\"\"") != std::string::npos);
    CHECK(csv_header().rfind("command,", 0) == 0);
}

TEST_CASE("text rendering stays single line") {
    VerdictReport r;
    r.command = "field.mn";
    r.instance = "field=GF(2^4)";
    r.verdict = "holds";
    auto line = render(r, ReportFormat::Text);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(line.find("field.mn") != std::string::npos);
}

TEST_CASE("format names") {
    CHECK(parse_format("json") == ReportFormat::Json);
    CHECK(parse_format("csv") == ReportFormat::Csv);
    CHECK(parse_format("text") == ReportFormat::Text);
    CHECK_THROWS_AS(parse_format("xml"), DomainError);
}

TEST_CASE("hex digests are fixed width") {
    CHECK(hex64(0) == "0000000000000000");
    CHECK(hex64(0xdeadbeefull) == "00000000deadbeef");
}

TEST_CASE("subspace serialization uses coefficient rows") {
    FieldExt gf16(2, 4);
    auto j = subspace_json(subfield(gf16, 2));
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0] == nlohmann::ordered_json::array({1, 0, 0, 0}));
    CHECK(j[1] == nlohmann::ordered_json::array({0, 1, 1, 0}));
}

TEST_CASE("oracle agreement suite is reproducible") {
    VerifyOptions opt;
    opt.seed = 7;
    auto a = run_oracle_agreement(opt);
    auto b = run_oracle_agreement(opt);
    CHECK(a.all_pass);
    CHECK(a.stream == b.stream);
}
