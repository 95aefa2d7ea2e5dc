#include "support/fixtures.hpp"

#include "quasigold/text.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <unistd.h>

namespace qg::ts {

const char* kFirstSearchQuery =
    "(\"test case\" OR \"test suite\" OR \"test script\" OR \"test code\" OR "
    "\"test specification\" OR \"natural language test\") AND "
    "(\"systematic review\" OR \"systematic literature review\" OR "
    "\"systematic mapping\" OR \"systematic scoping\")";

const char* kThirdSearchQuery =
    "(\"test case\" OR \"test suite\" OR \"test script\" OR \"test code\" OR "
    "\"test specification\" OR \"natural language test\" OR \"test\" OR \"testing\") AND "
    "(\"systematic review\" OR \"systematic literature review\" OR "
    "\"systematic mapping\" OR \"systematic map\" OR \"systematic scoping\" OR "
    "\"systematic literature survey\")";

BibRecord make_rec(std::string id, std::string title, std::string abstract,
                   std::vector<std::string> keywords, std::vector<std::string> authors) {
    BibRecord rec;
    rec.title = std::move(title);
    rec.abstract = std::move(abstract);
    rec.keywords = std::move(keywords);
    rec.authors = std::move(authors);
    finalize_record(rec, {}, id);
    return rec;
}

std::vector<BibRecord> filler_records(const std::string& prefix, std::size_t n) {
    std::vector<BibRecord> out;
    out.reserve(n);
    char buf[24];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "%03zu", i + 1);
        out.push_back(make_rec(prefix + buf, "Notes on cloud resource billing " + std::string(buf),
                               "Margins and ledgers for item " + std::string(buf) + "."));
    }
    return out;
}

QGS qgs_of_ids(const std::vector<std::string>& ids, QgsOrigin origin) {
    std::vector<QgsMember> members;
    for (const auto& id : ids) {
        QgsMember m;
        m.record_id = id;
        m.origin = origin;
        m.attestation.phase1 = true;
        m.attestation.phase2 = true;
        m.attestation.phase3 = true;
        members.push_back(std::move(m));
    }
    return make_qgs(std::move(members), "fixture");
}

namespace {

std::vector<std::string> id_seq(const std::string& prefix, std::size_t from, std::size_t to) {
    std::vector<std::string> out;
    char buf[16];
    for (std::size_t i = from; i <= to; ++i) {
        std::snprintf(buf, sizeof(buf), "%03zu", i);
        out.push_back(prefix + buf);
    }
    return out;
}

/// A record that matches both substrings of either study query.
BibRecord relevant_rec(const std::string& id, std::size_t i) {
    return make_rec(id, "A systematic review of test case quality " + std::to_string(i),
                    "We map test suite studies via a systematic mapping lens.");
}

}  // namespace

Table3Small table3_qgs13() {
    Table3Small f;
    auto qgs_ids = id_seq("qgs:", 1, 13);
    f.qgs = qgs_of_ids(qgs_ids);

    std::vector<BibRecord> first;
    for (std::size_t i = 1; i <= 8; ++i) first.push_back(relevant_rec(qgs_ids[i - 1], i));
    for (auto& r : filler_records("f1:", 113)) first.push_back(std::move(r));
    f.first_result = make_record_set("first-search", std::move(first));

    std::vector<BibRecord> third;
    for (std::size_t i = 1; i <= 12; ++i) third.push_back(relevant_rec(qgs_ids[i - 1], i));
    for (auto& r : filler_records("f3:", 557)) third.push_back(std::move(r));
    f.third_result = make_record_set("third-search", std::move(third));
    return f;
}

Table3Full table3_qgs58() {
    Table3Full f;
    auto qgs_ids = id_seq("sls:", 1, 58);
    f.qgs = qgs_of_ids(qgs_ids);

    std::vector<BibRecord> first;
    for (std::size_t i = 1; i <= 19; ++i) first.push_back(relevant_rec(qgs_ids[i - 1], i));
    for (auto& r : filler_records("g1:", 102)) first.push_back(std::move(r));
    f.first_result = make_record_set("first-search", std::move(first));

    std::vector<BibRecord> third;
    for (std::size_t i = 1; i <= 44; ++i) third.push_back(relevant_rec(qgs_ids[i - 1], i));
    for (auto& r : filler_records("g3:", 525)) third.push_back(std::move(r));
    f.third_result = make_record_set("third-search", std::move(third));
    return f;
}

SourceReviewFixture source_review_fixture() {
    SourceReviewFixture f;
    std::vector<BibRecord> recs;

    // 58 systematic studies, st:001..st:058.
    for (std::size_t i = 1; i <= 58; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%03zu", i);
        BibRecord r = make_rec("st:" + std::string(buf),
                               "A systematic review of testing topic " + std::to_string(i),
                               "Secondary study number " + std::to_string(i) + ".",
                               {"software testing"}, {"Author" + std::to_string(i) + ", A."});
        r.study_design =
            i % 2 ? StudyDesign::SystematicReview : StudyDesign::SystematicMapping;
        r.year = 2000 + static_cast<int>(i % 16);
        recs.push_back(std::move(r));
    }
    // 63 informal surveys, st:059..st:121.
    for (std::size_t i = 59; i <= 121; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%03zu", i);
        BibRecord r = make_rec("st:" + std::string(buf),
                               "A survey on testing topic " + std::to_string(i),
                               "Informal overview " + std::to_string(i) + ".", {},
                               {"Author" + std::to_string(i) + ", A."});
        r.study_design = StudyDesign::InformalSurvey;
        r.year = 2000 + static_cast<int>(i % 16);
        recs.push_back(std::move(r));
    }
    // Two metadata-identical duplicates of st:005 and st:017 under other ids
    // (same title, authors, abstract; fewer populated fields than the originals).
    for (const char* dup_of : {"005", "017"}) {
        std::size_t i = static_cast<std::size_t>(std::stoul(dup_of));
        BibRecord r = make_rec(std::string("stdup:") + dup_of,
                               "A systematic review of testing topic " + std::to_string(i),
                               "Secondary study number " + std::to_string(i) + ".", {},
                               {"Author" + std::to_string(i) + ", A."});
        r.study_design = StudyDesign::Unknown;
        recs.push_back(std::move(r));
    }

    f.raw123 = make_record_set("st-initial", std::move(recs));

    // Attestation covers all 58 candidates; the first 13 pass phases 2 and 3.
    f.expected_qgs_ids = id_seq("st:", 1, 13);
    for (std::size_t i = 1; i <= 58; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%03zu", i);
        Attestation att;
        att.phase1 = true;
        att.phase2 = i <= 13;
        att.phase3 = i <= 13 ? std::optional<bool>(true) : std::nullopt;
        f.attestation["st:" + std::string(buf)] = att;
    }
    return f;
}

SnowballFixture snowball_832() {
    SnowballFixture f;
    std::vector<BibRecord> corpus;

    std::vector<std::string> seed_ids;
    for (std::size_t i = 1; i <= 13; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%02zu", i);
        std::string id = "seed:" + std::string(buf);
        seed_ids.push_back(id);
        corpus.push_back(make_rec(id, "Seed secondary study " + std::to_string(i)));
        f.seeds.insert(id);
    }

    std::vector<std::string> citer_ids = id_seq("cite:", 1, 832);
    for (std::size_t i = 0; i < citer_ids.size(); ++i) {
        corpus.push_back(make_rec(citer_ids[i], "Citing paper " + std::to_string(i + 1)));
        f.citations.add(citer_ids[i], seed_ids[i % 13]);
    }
    // 114 extra edges: the first 114 citers also cite a second seed,
    // bringing the edge count to 946 over 832 distinct citers.
    for (std::size_t i = 0; i < 114; ++i) {
        f.citations.add(citer_ids[i], seed_ids[(i + 1) % 13]);
    }

    // 20-member QGS: 10 among the citers, 10 outside the snowball.
    std::vector<std::string> qgs_ids(citer_ids.begin(), citer_ids.begin() + 10);
    for (std::size_t i = 1; i <= 10; ++i) {
        std::string id = "out:" + std::to_string(i);
        corpus.push_back(make_rec(id, "Relevant paper outside the snowball " + std::to_string(i)));
        qgs_ids.push_back(id);
    }
    f.qgs20 = qgs_of_ids(qgs_ids);
    f.corpus = make_record_set("snowball-corpus", std::move(corpus));
    return f;
}

MissedSetFixture missed_39() {
    MissedSetFixture f;
    std::vector<BibRecord> recs;
    std::vector<std::string> ids;

    const char* topics[] = {"product line engineering", "web service composition",
                            "mutation analysis",        "model checking",
                            "requirements elicitation", "fault localization",
                            "program repair",           "effort estimation",
                            "code smells",              "technical debt",
                            "microservice migration"};
    // 33 records with the systematic terms but no test-artifact phrase.
    for (std::size_t i = 1; i <= 33; ++i) {
        std::string id = "miss:a" + std::to_string(i);
        ids.push_back(id);
        recs.push_back(make_rec(
            id, "A systematic review of " + std::string(topics[i % 11]) + " " + std::to_string(i),
            "Findings on " + std::string(topics[(i + 3) % 11]) + " in testing practice."));
    }
    // 6 records with a test-artifact phrase but no "systematic" terms.
    for (std::size_t i = 1; i <= 6; ++i) {
        std::string id = "miss:b" + std::to_string(i);
        ids.push_back(id);
        recs.push_back(make_rec(id, "A survey of test case generation variants " + std::to_string(i),
                                "Overview of test suite construction approaches."));
    }
    f.corpus = make_record_set("missed-corpus", std::move(recs));
    f.qgs = qgs_of_ids(ids);
    f.empty_result = make_record_set("empty-result", {});
    return f;
}

HandCorpus hand_corpus_20() {
    HandCorpus f;
    std::vector<BibRecord> recs;

    // Matching both substrings (7 records).
    recs.push_back(make_rec("h:01", "A systematic review of test case prioritization"));
    recs.push_back(make_rec("h:02", "Test suite minimization: a systematic literature review"));
    recs.push_back(make_rec("h:03", "On test script maintenance",
                            "We conducted a systematic mapping of script repair."));
    recs.push_back(make_rec("h:04", "Quality of test code", "", {"systematic review", "refactoring"}));
    recs.push_back(make_rec("h:05", "Test specification languages: a systematic scoping study"));
    recs.push_back(make_rec("h:06", "Natural language test generation",
                            "A systematic review of NLP-driven approaches."));
    recs.push_back(make_rec("h:07", "Evolving the test suite",
                            "Results of our systematic mapping study on suite growth."));
    // Substring B only (4 records).
    recs.push_back(make_rec("h:08", "A systematic review of microservice migration"));
    // h:09 mentions "testing" (not a first-search term, added by the third).
    recs.push_back(make_rec("h:09", "Systematic mapping of testing fault prediction"));
    recs.push_back(make_rec("h:10", "A systematic literature review of code smells"));
    recs.push_back(make_rec("h:11", "Systematic scoping of DevOps research"));
    // Substring A only (4 records).
    recs.push_back(make_rec("h:12", "Test case generation with symbolic execution"));
    recs.push_back(make_rec("h:13", "Measuring test code coverage in CI"));
    recs.push_back(make_rec("h:14", "Writing better test scripts", "Practical advice on test script hygiene."));
    recs.push_back(make_rec("h:15", "From requirements to test specification"));
    // Neither (5 records).
    recs.push_back(make_rec("h:16", "A survey of testing practices"));
    recs.push_back(make_rec("h:17", "Mutation analysis at scale"));
    recs.push_back(make_rec("h:18", "Continuous integration pipelines"));
    recs.push_back(make_rec("h:19", "An empirical study of flaky behavior"));
    recs.push_back(make_rec("h:20", "Grey literature on quality assurance"));

    f.corpus = make_record_set("hand-20", std::move(recs));
    f.first_search_matches = {"h:01", "h:02", "h:03", "h:04", "h:05", "h:06", "h:07"};
    return f;
}

const std::vector<std::string>& property_vocab() {
    static const std::vector<std::string> vocab = {
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
        "iota",  "kappa", "lambda", "mu",  "nu",      "xi",   "omik", "pi",
    };
    return vocab;
}

BibRecord random_record(Rng& rng, std::string id) {
    const auto& vocab = property_vocab();
    auto words = [&](std::size_t n) {
        std::string out;
        for (std::size_t i = 0; i < n; ++i) {
            if (i) out += ' ';
            out += vocab[rng.index(vocab.size())];
        }
        return out;
    };
    BibRecord rec;
    rec.title = "T " + words(2 + rng.index(5));
    if (rng.bernoulli(0.8)) rec.abstract = words(4 + rng.index(8));
    std::size_t n_kw = rng.index(3);
    for (std::size_t i = 0; i < n_kw; ++i) rec.keywords.push_back(words(1 + rng.index(2)));
    finalize_record(rec, {}, id);
    return rec;
}

std::vector<BibRecord> random_records(Rng& rng, std::size_t n, const std::string& prefix) {
    std::vector<BibRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(random_record(rng, prefix + std::to_string(i)));
    return out;
}

namespace {

std::unique_ptr<QueryNode> random_node(Rng& rng, int depth, int max_depth, int& phrase_budget) {
    const auto& vocab = property_vocab();
    auto make_phrase = [&]() {
        auto node = std::make_unique<QueryNode>();
        node->kind = QueryNode::Kind::Phrase;
        node->phrase = vocab[rng.index(vocab.size())];
        if (rng.bernoulli(0.4)) node->phrase += " " + vocab[rng.index(vocab.size())];
        node->phrase_tokens = tokenize(node->phrase);
        --phrase_budget;
        return node;
    };
    if (depth >= max_depth || phrase_budget <= 1 || rng.bernoulli(0.35)) return make_phrase();

    switch (rng.index(4)) {
        case 0:
        case 1: {  // And / Or, 2..3 children
            auto node = std::make_unique<QueryNode>();
            node->kind = rng.bernoulli(0.5) ? QueryNode::Kind::And : QueryNode::Kind::Or;
            std::size_t n_children = 2 + rng.index(2);
            for (std::size_t i = 0; i < n_children && phrase_budget > 0; ++i)
                node->children.push_back(random_node(rng, depth + 1, max_depth, phrase_budget));
            if (node->children.size() == 1) return std::move(node->children[0]);
            return node;
        }
        case 2: {  // Not
            auto node = std::make_unique<QueryNode>();
            node->kind = QueryNode::Kind::Not;
            node->children.push_back(random_node(rng, depth + 1, max_depth, phrase_budget));
            return node;
        }
        default: {  // Scoped
            auto node = std::make_unique<QueryNode>();
            node->kind = QueryNode::Kind::Scoped;
            node->scope = rng.bernoulli(0.5) ? FieldScope::Title : FieldScope::TitleAbsKey;
            node->children.push_back(random_node(rng, depth + 1, max_depth, phrase_budget));
            return node;
        }
    }
}

std::string ascii_norm(const std::string& s) {
    std::string out = " ";
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u))
            out.push_back(static_cast<char>(std::tolower(u)));
        else if (out.back() != ' ')
            out.push_back(' ');
    }
    if (out.back() != ' ') out.push_back(' ');
    return out;
}

bool oracle_node(const QueryNode* node, const BibRecord& rec, FieldScope scope) {
    switch (node->kind) {
        case QueryNode::Kind::Phrase: {
            if (oracle_phrase_match(rec.title, node->phrase)) return true;
            if (scope == FieldScope::Title) return false;
            if (oracle_phrase_match(rec.abstract, node->phrase)) return true;
            for (const auto& kw : rec.keywords)
                if (oracle_phrase_match(kw, node->phrase)) return true;
            return false;
        }
        case QueryNode::Kind::And:
            for (const auto& c : node->children)
                if (!oracle_node(c.get(), rec, scope)) return false;
            return true;
        case QueryNode::Kind::Or:
            for (const auto& c : node->children)
                if (oracle_node(c.get(), rec, scope)) return true;
            return false;
        case QueryNode::Kind::Not:
            return !oracle_node(node->children[0].get(), rec, scope);
        case QueryNode::Kind::Scoped:
            return oracle_node(node->children[0].get(), rec, node->scope);
    }
    return false;
}

}  // namespace

Query random_query(Rng& rng, int max_depth, int max_phrases) {
    int budget = max_phrases;
    Query q;
    q.reset_root(random_node(rng, 0, max_depth, budget));
    q.set_text(q.to_string());
    return q;
}

bool oracle_phrase_match(const std::string& field_text, const std::string& phrase) {
    std::string norm_field = ascii_norm(field_text);
    std::string norm_phrase = ascii_norm(phrase);
    if (norm_phrase == " ") return false;
    return norm_field.find(norm_phrase) != std::string::npos;
}

bool oracle_evaluate(const Query& query, const BibRecord& record, FieldScope default_scope) {
    return oracle_node(query.root(), record, default_scope);
}

TempDir::TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("quasigold_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

void TempDir::write(const std::string& name, const std::string& content) const {
    std::ofstream out(path_ / name, std::ios::binary);
    out << content;
}

}  // namespace qg::ts
