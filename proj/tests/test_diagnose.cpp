#include "quasigold/diagnose.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

using namespace qg;

TEST_CASE("diagnosis tally reproduces the 33/6 breakdown of the 39 missed papers") {
    auto f = ts::missed_39();
    Query q = parse_query(ts::kFirstSearchQuery);
    SearchConfig cfg;

    auto diagnoses = diagnose_misses(f.qgs, f.empty_result, q, cfg, f.corpus);
    REQUIRE(diagnoses.size() == 39);
    for (const auto& d : diagnoses) REQUIRE(d.causes.size() == 1);

    auto tally = cause_tally(diagnoses);
    REQUIRE(tally.size() == 2);
    CHECK(tally.at("TERM_ABSENT(A)") == 33);
    CHECK(tally.at("TERM_ABSENT(B)") == 6);
}

TEST_CASE("a record lacking only 'systematic' terms is TERM_ABSENT(B) with alternatives") {
    auto corpus = make_record_set(
        "c", {ts::make_rec("m:1", "A survey of test case selection", "No mapping terms here.")});
    auto qgs = ts::qgs_of_ids({"m:1"});
    Query q = parse_query(ts::kFirstSearchQuery);
    auto diagnoses =
        diagnose_misses(qgs, make_record_set("r", {}), q, SearchConfig{}, corpus);
    REQUIRE(diagnoses.size() == 1);
    REQUIRE(diagnoses[0].causes.size() == 1);
    const auto& cause = diagnoses[0].causes[0];
    CHECK(cause.kind == CauseKind::TermAbsent);
    CHECK(cause.label == "TERM_ABSENT(B)");
    CHECK(cause.evidence.at("phrase_alternatives").find("systematic review") != std::string::npos);
}

TEST_CASE("subject-area misclassification surfaces as SUBJECT_AREA_FILTER") {
    BibRecord rec = ts::make_rec("eng:1", "Test case quality: a systematic mapping");
    rec.subject_areas = {"Engineering"};
    auto corpus = make_record_set("c", {rec});
    auto qgs = ts::qgs_of_ids({"eng:1"});
    Query q = parse_query(ts::kFirstSearchQuery);
    SearchConfig cfg;
    cfg.subject_area_filter = std::set<std::string>{"Computer Science"};

    auto diagnoses = diagnose_misses(qgs, make_record_set("r", {}), q, cfg, corpus);
    REQUIRE(diagnoses.size() == 1);
    REQUIRE(diagnoses[0].causes.size() == 1);
    CHECK(diagnoses[0].causes[0].kind == CauseKind::SubjectAreaFilter);
    CHECK(diagnoses[0].causes[0].evidence.at("record_subject_areas") == "Engineering");
}

TEST_CASE("a miss that matches query and filters is UNEXPLAINED, alone") {
    BibRecord rec = ts::make_rec("lag:1", "A systematic review of test case design");
    auto corpus = make_record_set("c", {rec});
    auto qgs = ts::qgs_of_ids({"lag:1"});
    Query q = parse_query(ts::kFirstSearchQuery);

    auto diagnoses = diagnose_misses(qgs, make_record_set("r", {}), q, SearchConfig{}, corpus);
    REQUIRE(diagnoses.size() == 1);
    REQUIRE(diagnoses[0].causes.size() == 1);
    CHECK(diagnoses[0].causes[0].kind == CauseKind::Unexplained);
}

TEST_CASE("source, cutoff and doc-type causes come before term causes, in order") {
    BibRecord rec = ts::make_rec("multi:1", "An unrelated ledger of billing topics");
    rec.source_databases = {"ACM"};
    rec.year = 2018;
    rec.doc_type = DocType::Report;
    auto corpus = make_record_set("c", {rec});
    auto qgs = ts::qgs_of_ids({"multi:1"});
    Query q = parse_query(ts::kFirstSearchQuery);
    SearchConfig cfg;
    cfg.sources = {"Scopus"};
    cfg.cutoff_date = CutoffDate{2015, 10};
    cfg.doc_type_filter = std::set<DocType>{DocType::JournalArticle, DocType::ConferencePaper};

    auto diagnoses = diagnose_misses(qgs, make_record_set("r", {}), q, cfg, corpus);
    REQUIRE(diagnoses.size() == 1);
    const auto& causes = diagnoses[0].causes;
    REQUIRE(causes.size() == 5);  // source, cutoff, doc-type, then two term causes
    CHECK(causes[0].kind == CauseKind::SourceNotSearched);
    CHECK(causes[1].kind == CauseKind::AfterCutoff);
    CHECK(causes[2].kind == CauseKind::DocTypeExcluded);
    CHECK(causes[3].kind == CauseKind::TermAbsent);
    CHECK(causes[4].kind == CauseKind::TermAbsent);
}

TEST_CASE("a mandatory generic phrase is linted as GENERIC_TERM_EXCLUDER") {
    Query q = parse_query("(\"test case\" OR \"test suite\") AND \"software\"");
    BibRecord rec = ts::make_rec("gen:1", "Test case prioritization in embedded systems",
                                 "No generic context word appears.");
    auto corpus = make_record_set("c", {rec});
    auto qgs = ts::qgs_of_ids({"gen:1"});

    auto diagnoses = diagnose_misses(qgs, make_record_set("r", {}), q, SearchConfig{}, corpus);
    REQUIRE(diagnoses.size() == 1);
    const auto& causes = diagnoses[0].causes;
    REQUIRE(causes.size() == 2);
    CHECK(causes[0].kind == CauseKind::TermAbsent);
    CHECK(causes[0].label == "TERM_ABSENT(B)");
    CHECK(causes[1].kind == CauseKind::GenericTermExcluder);
    CHECK(causes[1].label == "GENERIC_TERM_EXCLUDER(software)");
}

TEST_CASE("diagnose_misses errors on unresolved members and skips found ones") {
    auto corpus = make_record_set("c", {ts::make_rec("ok:1", "A systematic review of test case x")});
    Query q = parse_query(ts::kFirstSearchQuery);

    auto missing_qgs = ts::qgs_of_ids({"ghost:1"});
    CHECK_THROWS_AS(
        diagnose_misses(missing_qgs, make_record_set("r", {}), q, SearchConfig{}, corpus),
        DataError);

    auto found_qgs = ts::qgs_of_ids({"ok:1"});
    auto result = run_search(q, corpus, SearchConfig{});
    CHECK(diagnose_misses(found_qgs, result, q, SearchConfig{}, corpus).empty());
}

// --- counterfactuals --------------------------------------------------------

namespace {

struct CfFixture {
    RecordSet corpus;
    QGS qgs;
    Query query;
};

// Four QGS papers match only via "testing"; four match the base query.
CfFixture counterfactual_fixture() {
    CfFixture f;
    std::vector<BibRecord> recs;
    std::vector<std::string> qgs_ids;
    for (int i = 0; i < 4; ++i) {
        std::string id = "base:" + std::to_string(i);
        recs.push_back(ts::make_rec(id, "A systematic review of test case topic " +
                                            std::to_string(i)));
        qgs_ids.push_back(id);
    }
    for (int i = 0; i < 4; ++i) {
        std::string id = "only:" + std::to_string(i);
        recs.push_back(ts::make_rec(id, "A systematic review of unit testing topic " +
                                            std::to_string(i)));
        qgs_ids.push_back(id);
    }
    for (auto& r : ts::filler_records("cfn:", 12)) recs.push_back(std::move(r));
    f.corpus = make_record_set("cf", std::move(recs));
    f.qgs = ts::qgs_of_ids(qgs_ids);
    f.query = parse_query(
        "(\"test case\" OR \"test suite\") AND (\"systematic review\" OR \"systematic mapping\")");
    return f;
}

}  // namespace

TEST_CASE("add-OR-disjunct raises recall and result size by the constructed deltas") {
    auto f = counterfactual_fixture();
    auto edit = parse_edit("add-or:A:testing");
    auto report = counterfactual_search(f.query, edit, f.corpus, SearchConfig{}, f.qgs);

    // Oracle: brute-force evaluation of both queries over the corpus.
    auto before = run_search(f.query, f.corpus, SearchConfig{});
    auto [q_after, cfg_after] = apply_edit(f.query, SearchConfig{}, edit);
    auto after = run_search(q_after, f.corpus, cfg_after);
    CHECK(report.before.recall == doctest::Approx(0.5));
    CHECK(report.after.recall == doctest::Approx(1.0));
    CHECK(report.result_size_delta == static_cast<long long>(after.size() - before.size()));
    CHECK(report.result_size_delta == 4);
    CHECK(report.query_after.find("\"testing\"") != std::string::npos);
}

TEST_CASE("add-OR-disjunct never decreases recall on random corpora") {
    for (unsigned trial = 0; trial < 60; ++trial) {
        Rng rng = Rng::derive(6060, trial);
        auto corpus = make_record_set("p", ts::random_records(rng, 20, "p:"));
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < 5; ++i)
            ids.push_back(corpus.records[rng.index(corpus.size())].record_id);
        auto qgs = ts::qgs_of_ids(ids);
        Query q = parse_query("\"alpha\" AND \"beta\"");
        auto edit = AddOrDisjunct{rng.index(2), ts::property_vocab()[rng.index(8)]};
        auto report = counterfactual_search(q, QueryEdit{edit}, corpus, SearchConfig{}, qgs);
        CAPTURE(trial);
        REQUIRE(report.after.recall >= report.before.recall);
        REQUIRE(report.result_size_delta >= 0);
    }
}

TEST_CASE("remove-AND-conjunct on a single-conjunct query errors; otherwise grows the result") {
    auto f = counterfactual_fixture();
    Query single = parse_query("\"test case\"");
    CHECK_THROWS_AS(
        counterfactual_search(single, parse_edit("remove-and:0"), f.corpus, SearchConfig{}, f.qgs),
        DataError);

    auto report =
        counterfactual_search(f.query, parse_edit("remove-and:B"), f.corpus, SearchConfig{}, f.qgs);
    CHECK(report.result_size_delta >= 0);
    CHECK(report.query_after.find("systematic review") == std::string::npos);
}

TEST_CASE("change-filter dropping the subject restriction recovers exactly the mislabeled pair") {
    std::vector<BibRecord> recs;
    std::vector<std::string> qgs_ids;
    for (int i = 0; i < 3; ++i) {
        BibRecord r = ts::make_rec("cs:" + std::to_string(i),
                                   "A systematic review of test case topic " + std::to_string(i));
        r.subject_areas = {"Computer Science"};
        qgs_ids.push_back(r.record_id);
        recs.push_back(std::move(r));
    }
    for (int i = 0; i < 2; ++i) {
        BibRecord r = ts::make_rec("mis:" + std::to_string(i),
                                   "A systematic review of test suite topic " + std::to_string(i));
        r.subject_areas = {"Engineering"};
        qgs_ids.push_back(r.record_id);
        recs.push_back(std::move(r));
    }
    auto corpus = make_record_set("c", std::move(recs));
    auto qgs = ts::qgs_of_ids(qgs_ids);
    Query q = parse_query(ts::kFirstSearchQuery);
    SearchConfig cfg;
    cfg.subject_area_filter = std::set<std::string>{"Computer Science"};
    cfg.empty_subject_policy = EmptySubjectPolicy::Strict;

    auto report =
        counterfactual_search(q, parse_edit("filter:subject-areas="), corpus, cfg, qgs);
    CHECK(report.before.result_size == 3);
    CHECK(report.after.result_size == 5);
    CHECK(report.result_size_delta == 2);
    CHECK(report.after.recall == doctest::Approx(1.0));
}

TEST_CASE("change-scope edit widens title-only searches") {
    std::vector<BibRecord> recs;
    recs.push_back(ts::make_rec("t:1", "A systematic review of test case design"));
    recs.push_back(
        ts::make_rec("t:2", "On regression selection", "A systematic review of test case work."));
    auto corpus = make_record_set("c", std::move(recs));
    auto qgs = ts::qgs_of_ids({"t:1", "t:2"});
    Query q = parse_query("\"test case\" AND \"systematic review\"");
    SearchConfig cfg;
    cfg.field_scope = FieldScope::Title;

    auto report =
        counterfactual_search(q, parse_edit("scope:title-abs-key"), corpus, cfg, qgs);
    CHECK(report.before.result_size == 1);
    CHECK(report.after.result_size == 2);
}

TEST_CASE("malformed edits are rejected") {
    CHECK_THROWS_AS(parse_edit("add-or:A"), DataError);
    CHECK_THROWS_AS(parse_edit("bogus:1"), DataError);
    CHECK_THROWS_AS(parse_edit("filter:year-range=2010"), DataError);
    CHECK_THROWS_AS(parse_edit("filter:unknown=x"), DataError);

    auto f = counterfactual_fixture();
    CHECK_THROWS_AS(counterfactual_search(f.query, parse_edit("add-or:5:extra"), f.corpus,
                                          SearchConfig{}, f.qgs),
                    DataError);
}
