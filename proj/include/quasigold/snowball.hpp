#pragma once

#include "quasigold/errors.hpp"
#include "quasigold/metrics.hpp"
#include "quasigold/qgs.hpp"
#include "quasigold/record_set.hpp"

#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qg {

/// (citing, cited) pairs. Unique, no self-citations.
struct CitationTable {
    std::set<std::pair<std::string, std::string>> edges;

    std::size_t size() const { return edges.size(); }
    void add(std::string citing, std::string cited);  // drops self-citations silently
};

struct CitationLoadResult {
    CitationTable table;
    std::vector<Diagnostic> diagnostics;
};

/// CSV with header `citing_id,cited_id`. Self-citations and malformed
/// rows are skipped with diagnostics; duplicate pairs collapse.
CitationLoadResult load_citations_csv(std::istream& in);

/// One-step forward snowball: every corpus record citing any seed, the
/// seeds themselves excluded. Unknown seed ids throw DataError; citing
/// ids that do not resolve in the corpus are skipped (reported via
/// `unresolved_citing` when non-null).
RecordSet forward_snowball(const std::set<std::string>& seeds, const CitationTable& citations,
                           const RecordSet& corpus,
                           std::vector<std::string>* unresolved_citing = nullptr);

struct SnowballEvaluation {
    ValidationReport report;
    std::vector<std::string> warnings;
};

/// Recall/precision of the snowball sample against a QGS. When seeds are
/// supplied and overlap the QGS, the evaluation is flagged: validating a
/// snowball against its own seed set always yields recall 100%.
SnowballEvaluation evaluate_snowball(const RecordSet& snowball_result, const QGS& qgs,
                                     RecallThreshold threshold = {},
                                     const std::set<std::string>& seeds = {});

}  // namespace qg
