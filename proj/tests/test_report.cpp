#include "quasigold/report.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

#include <sstream>

using namespace qg;

TEST_CASE("QGS JSON round trip preserves members, origins and attestations") {
    auto fixture = ts::source_review_fixture();
    auto deduped = dedup(fixture.raw123, DedupPolicy{});
    auto built = build_qgs_from_sls(deduped.set, fixture.attestation, QgsOrigin::ExistingSls,
                                    "initial set of the source review");
    std::string text = qgs_to_json_text(built.qgs);
    QGS back = qgs_from_json_text(text);
    REQUIRE(back.size() == built.qgs.size());
    CHECK(back.source_note == built.qgs.source_note);
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back.members[i].record_id == built.qgs.members[i].record_id);
        CHECK(back.members[i].origin == built.qgs.members[i].origin);
        CHECK(back.members[i].attestation.full() == built.qgs.members[i].attestation.full());
    }
    // Serialization is deterministic.
    CHECK(qgs_to_json_text(back) == text);
}

TEST_CASE("QGS JSON schema violations are data errors") {
    CHECK_THROWS_AS(qgs_from_json_text("{not json"), DataError);
    CHECK_THROWS_AS(qgs_from_json_text("{\"members\": 3}"), DataError);
    CHECK_THROWS_AS(qgs_from_json_text("{\"members\": [{\"record_id\": \"x\", \"phase1\": false}]}"),
                    DataError);
    CHECK_THROWS_AS(
        qgs_from_json_text("{\"members\": [{\"record_id\": \"x\", \"origin\": \"wat\"}]}"),
        DataError);
}

TEST_CASE("validation report JSON carries the rounded percents and verdict") {
    auto f = ts::table3_qgs13();
    auto report = validate_search(f.qgs, f.third_result);
    auto j = to_json(report);
    CHECK(j["recall_percent"].get<double>() == doctest::Approx(92.31));
    CHECK(j["precision_percent"].get<double>() == doctest::Approx(2.11));
    CHECK(j["verdict"] == "accept");
    CHECK(j["qgs_size"] == 13);
    CHECK(j["found"].size() == 12);
}

TEST_CASE("report envelope embeds the repeatability block") {
    PipelineRun run;
    run.command = {"validate", "--qgs", "qgs.json"};
    run.inputs["qgs"] = "qgs.json";
    run.parameters["threshold"] = {70.0, 80.0};
    run.timestamp = "2026-01-01T00:00:00Z";
    auto j = make_report(run, "validation", ordered_json{{"recall_percent", 61.54}});
    CHECK(j["pipeline_run"]["tool"] == "quasigold");
    CHECK(j["pipeline_run"]["command"][0] == "validate");
    CHECK(j["pipeline_run"]["timestamp"] == "2026-01-01T00:00:00Z");
    CHECK(j["report_kind"] == "validation");
    CHECK(j["validation"]["recall_percent"].get<double>() == doctest::Approx(61.54));
}

TEST_CASE("text rendering is derived from the JSON and honors color flag") {
    ordered_json j;
    j["verdict"] = "accept";
    j["values"] = {1, 2};
    std::ostringstream plain;
    render_text(plain, j, false);
    CHECK(plain.str().find("verdict: accept") != std::string::npos);
    CHECK(plain.str().find("\033[") == std::string::npos);

    std::ostringstream colored;
    render_text(colored, j, true);
    CHECK(colored.str().find("\033[1m") != std::string::npos);
}

TEST_CASE("csv rendering flattens nested keys") {
    ordered_json j;
    j["a"]["b"] = 1;
    j["list"] = {"x", "y"};
    std::ostringstream os;
    render_csv(os, j);
    CHECK(os.str().find("a.b,1") != std::string::npos);
    CHECK(os.str().find("list[1],y") != std::string::npos);
}
