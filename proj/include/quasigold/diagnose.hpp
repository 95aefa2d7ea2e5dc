#pragma once

#include "quasigold/metrics.hpp"
#include "quasigold/qgs.hpp"
#include "quasigold/query.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qg {

enum class CauseKind {
    SourceNotSearched,
    AfterCutoff,  // also covers "not indexed at search time" by year
    DocTypeExcluded,
    SubjectAreaFilter,
    TermAbsent,
    GenericTermExcluder,
    Unexplained,  // matches query + filters yet absent: indexing lag or engine inconsistency
};

std::string to_string(CauseKind k);

struct MissCause {
    CauseKind kind = CauseKind::Unexplained;
    /// Tally label, e.g. "TERM_ABSENT(A)"; kind name when unparameterized.
    std::string label;
    /// Machine-checkable facts: the unmatched conjunct and its phrase
    /// alternatives, the filter values compared, etc.
    std::map<std::string, std::string> evidence;
};

struct MissDiagnosis {
    std::string record_id;
    std::vector<MissCause> causes;  // non-empty; Unexplained only ever alone
};

inline const std::vector<std::string> kDefaultGenericTerms = {"software", "quality"};

/// Explains, per QGS member missing from `result`, why the search did
/// not find it. Causes are ordered cheapest-to-verify first: source
/// coverage, date, doc type, subject filter, then string-level causes.
/// Throws DataError when a member does not resolve in `corpus`.
std::vector<MissDiagnosis> diagnose_misses(
    const QGS& qgs, const RecordSet& result, const Query& query, const SearchConfig& config,
    const RecordSet& corpus,
    const std::vector<std::string>& generic_terms = kDefaultGenericTerms);

/// Per-cause-label counts across all diagnoses, e.g. {"TERM_ABSENT(A)": 33}.
std::map<std::string, std::size_t> cause_tally(const std::vector<MissDiagnosis>& diagnoses);

// -- counterfactual what-if analysis ---------------------------------------

struct AddOrDisjunct {
    std::size_t conjunct_index = 0;
    std::string phrase;
};
struct RemoveAndConjunct {
    std::size_t conjunct_index = 0;
};
struct ChangeScope {
    FieldScope scope = FieldScope::TitleAbsKey;
};
struct ChangeFilter {
    enum class Action {
        ClearSubjectAreas,
        SetSubjectAreas,
        ClearCutoff,
        SetCutoff,
        ClearDocTypes,
        SetDocTypes,
        ClearYearRange,
        SetYearRange,
    };
    Action action = Action::ClearSubjectAreas;
    std::set<std::string> subject_areas;
    int cutoff_year = 0;
    std::set<DocType> doc_types;
    YearRange year_range;
};

using QueryEdit = std::variant<AddOrDisjunct, RemoveAndConjunct, ChangeScope, ChangeFilter>;

std::string describe(const QueryEdit& edit);

/// Parses the CLI edit syntax: "add-or:<conjunct>:<phrase>",
/// "remove-and:<conjunct>", "scope:<title|title-abs-key>",
/// "filter:<name>=<value>" (empty value clears). Conjuncts may be given
/// as letters (A, B) or zero-based indices.
QueryEdit parse_edit(const std::string& text);

/// The edited query/config pair. Throws DataError on out-of-range
/// conjunct indices or on removing the only conjunct.
std::pair<Query, SearchConfig> apply_edit(const Query& query, const SearchConfig& config,
                                          const QueryEdit& edit);

/// Before/after recall, precision and result size for a proposed edit:
/// the return-on-investment of a search-string change, made executable.
struct CounterfactualReport {
    std::string edit_description;
    std::string query_before;
    std::string query_after;
    ValidationReport before;
    ValidationReport after;
    long long result_size_delta = 0;
};

CounterfactualReport counterfactual_search(const Query& query, const QueryEdit& edit,
                                           const RecordSet& corpus, const SearchConfig& config,
                                           const QGS& qgs, RecallThreshold threshold = {});

}  // namespace qg
