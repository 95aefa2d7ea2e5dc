#pragma once

// Shared fixtures and independent reference implementations for the unit
// and acceptance suites. The oracle evaluators here deliberately take a
// different route than the library (substring search over padded
// normalized text, explicit truth-table recursion) so the two can check
// each other.

#include "quasigold/dedup.hpp"
#include "quasigold/qgs.hpp"
#include "quasigold/query.hpp"
#include "quasigold/record_set.hpp"
#include "quasigold/rng.hpp"
#include "quasigold/snowball.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qg::ts {

// The two search strings under study, substring A (test artifact) AND
// substring B (systematic secondary study).
extern const char* kFirstSearchQuery;
extern const char* kThirdSearchQuery;

BibRecord make_rec(std::string id, std::string title, std::string abstract = {},
                   std::vector<std::string> keywords = {},
                   std::vector<std::string> authors = {});

/// n filler records with ids `<prefix>NNN` whose text matches none of
/// the study queries.
std::vector<BibRecord> filler_records(const std::string& prefix, std::size_t n);

QGS qgs_of_ids(const std::vector<std::string>& ids, QgsOrigin origin = QgsOrigin::ExistingSls);

// --- paper-cardinality fixtures -------------------------------------------

/// 13-member QGS; first search finds 8 of 13 in a 121-record result,
/// third finds 12 of 13 in a 569-record result (recall 61.54 / 92.31,
/// precision 6.61 / 2.11).
struct Table3Small {
    QGS qgs;
    RecordSet first_result;
    RecordSet third_result;
};
Table3Small table3_qgs13();

/// 58-member QGS; 19 and 44 found. Note: the study text says the first
/// search found 18 of these, but the published recall 32.76% = 19/58 and
/// precision 15.70% = 19/121; this fixture reproduces the published
/// table's arithmetic (19 found) and records the discrepancy here.
struct Table3Full {
    QGS qgs;
    RecordSet first_result;
    RecordSet third_result;
};
Table3Full table3_qgs58();

/// The source review's initial set: 123 records containing two
/// metadata-identical pairs (-> 121 after dedup), 63 informal surveys
/// among the survivors (-> 58 candidates), and an attestation input
/// passing exactly 13.
struct SourceReviewFixture {
    RecordSet raw123;  // pre-dedup, name "st-initial"
    std::map<std::string, Attestation> attestation;  // covers all 58 candidates
    std::vector<std::string> expected_qgs_ids;       // the 13
};
SourceReviewFixture source_review_fixture();

/// 13 seeds cited by 946 edges from 832 distinct papers; a 20-member QGS
/// of which 10 are among the citers (recall 50.00, precision 1.20).
struct SnowballFixture {
    RecordSet corpus;  // seeds + citers + the 10 non-cited QGS members
    std::set<std::string> seeds;
    CitationTable citations;
    QGS qgs20;
};
SnowballFixture snowball_832();

/// 39 missed records: 33 lack every test-artifact phrase, 6 lack the
/// "systematic" terms; first-search query diagnosis tallies
/// TERM_ABSENT(A)=33, TERM_ABSENT(B)=6.
struct MissedSetFixture {
    RecordSet corpus;
    QGS qgs;
    RecordSet empty_result;
};
MissedSetFixture missed_39();

/// 20 hand-built records of which exactly 7 match the first-search query
/// at TITLE-ABS-KEY scope; expected ids listed alongside.
struct HandCorpus {
    RecordSet corpus;
    std::vector<std::string> first_search_matches;  // sorted
};
HandCorpus hand_corpus_20();

// --- randomized-property support --------------------------------------------

/// Small ASCII vocabulary for random records and phrases.
const std::vector<std::string>& property_vocab();

BibRecord random_record(Rng& rng, std::string id);

/// Random AST with at most `max_depth` levels and `max_phrases` phrases.
Query random_query(Rng& rng, int max_depth, int max_phrases);

std::vector<BibRecord> random_records(Rng& rng, std::size_t n, const std::string& prefix);

/// Independent reference evaluation (no trace, substring-based matching).
bool oracle_evaluate(const Query& query, const BibRecord& record, FieldScope default_scope);

/// Reference phrase match used by the oracle.
bool oracle_phrase_match(const std::string& field_text, const std::string& phrase);

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    void write(const std::string& name, const std::string& content) const;

private:
    std::filesystem::path path_;
};

}  // namespace qg::ts
