#pragma once

#include "quasigold/qgs.hpp"
#include "quasigold/record_set.hpp"

#include <map>
#include <string>
#include <vector>

namespace qg {

/// Accept/revise band in percent. The search is acceptable once recall
/// reaches `low`; [70,80] is the conventional band.
struct RecallThreshold {
    double low = 70.0;
    double high = 80.0;
};

enum class Verdict { Accept, Revise };

std::string to_string(Verdict v);

struct ValidationReport {
    std::size_t qgs_size = 0;
    std::size_t result_size = 0;
    std::vector<std::string> found;   // QGS ids present in the result, sorted
    std::vector<std::string> missed;  // QGS ids absent from the result, sorted
    double recall = 0.0;              // fraction in [0,1]
    double precision = 0.0;           // fraction in [0,1]; 0 when result empty
    double recall_percent = 0.0;      // half-up, 2 decimals
    double precision_percent = 0.0;
    RecallThreshold threshold;
    Verdict verdict = Verdict::Revise;
    std::vector<std::string> warnings;
};

/// |QGS ∩ result| / |QGS|, membership by record_id. Throws DataError on
/// an empty QGS.
double recall(const QGS& qgs, const RecordSet& result);

/// |QGS ∩ result| / |result|. Throws DataError on an empty result.
double precision(const QGS& qgs, const RecordSet& result);

/// Percentages use half-up rounding to 2 decimals; 92.31 means 12 of 13.
/// The verdict compares the unrounded recall against threshold.low.
ValidationReport validate_search(const QGS& qgs, const RecordSet& result,
                                 RecallThreshold threshold = {});

/// Percent rounding helper shared by all reports.
double round_percent(double fraction);

struct OverlapRegion {
    unsigned mask = 0;        // bit i set = record is in sets[i]
    std::string signature;    // names joined with '&'
    std::size_t count = 0;
};

/// Per-source contribution over the union of all provided sets, after
/// Chen et al.: overall = |s|/|union|, exclusive = |s minus others|/|union|,
/// overlap = |s ∩ others|/|union|.
struct SourceContribution {
    std::string name;
    std::size_t size = 0;
    double overall = 0.0;
    double exclusive = 0.0;
    double overlap = 0.0;
};

struct OverlapReport {
    std::vector<std::string> set_names;
    std::size_t union_size = 0;
    std::vector<OverlapRegion> regions;  // all 2^n - 1 signatures, by mask
    std::vector<SourceContribution> contributions;
};

/// Venn-region counts for 2..6 sets (more would explode the region
/// table). Throws DataError outside that range.
OverlapReport overlap(const std::vector<RecordSet>& sets);

}  // namespace qg
