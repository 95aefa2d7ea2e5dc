#pragma once

#include "quasigold/record_set.hpp"
#include "quasigold/text.hpp"  // normalize_title is part of this module's surface

#include <string>
#include <vector>

namespace qg {

enum class DedupMode {
    Strict,  // equal normalized titles
    Fuzzy,   // token-Jaccard similarity of normalized titles >= threshold
};

struct DedupPolicy {
    DedupMode mode = DedupMode::Strict;
    double title_similarity_threshold = 0.90;  // in [0,1], fuzzy mode
    bool require_author_match = true;          // first-author surnames must agree
};

struct DedupCluster {
    std::vector<std::string> member_ids;  // sorted
    std::string survivor_id;
};

struct NearDuplicatePair {
    std::string id_a;  // id_a < id_b
    std::string id_b;
    double similarity = 0.0;
};

struct DedupReport {
    std::vector<DedupCluster> clusters;  // only non-trivial clusters, sorted by survivor
    std::size_t removed_count = 0;       // sum of (cluster size - 1)
    /// Pairs at or above the similarity threshold but below exact title
    /// equality; merged in fuzzy mode, left for human review in strict.
    std::vector<NearDuplicatePair> near_duplicates;
};

struct DedupResult {
    RecordSet set;
    DedupReport report;
};

/// Duplicate detection per policy, closed transitively into clusters.
/// The survivor is the record with the most populated fields (ties break
/// to the lexicographically smallest record_id) and absorbs the union of
/// keywords, subject areas and source databases. Output is independent
/// of input order.
DedupResult dedup(const RecordSet& set, const DedupPolicy& policy = {});

/// Normalized first-author surname ("A. Smith" -> "smith",
/// "Smith, A." -> "smith"); empty when the record has no authors.
std::string first_author_surname(const BibRecord& rec);

/// Token-set Jaccard similarity of two normalized titles.
double title_jaccard(const std::string& title_a, const std::string& title_b);

}  // namespace qg
