#pragma once

#include "quasigold/errors.hpp"
#include "quasigold/record_set.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qg {

enum class QgsOrigin {
    ManualSearch,
    InformalSearch,
    ExpertRecommendation,
    ExistingSls,
    Snowball,
};

std::string to_string(QgsOrigin o);
std::optional<QgsOrigin> parse_qgs_origin(std::string_view s);

/// Selection-phase evidence for one QGS member. Unrecorded phases are
/// simply not attested; a recorded phase is pass (true) or fail (false).
struct Attestation {
    std::optional<bool> phase1;
    std::optional<bool> phase2;
    std::optional<bool> phase3;

    bool any_recorded_failed() const {
        return (phase1 && !*phase1) || (phase2 && !*phase2) || (phase3 && !*phase3);
    }
    /// All three phases recorded and passed.
    bool full() const {
        return phase1.value_or(false) && phase2.value_or(false) && phase3.value_or(false);
    }
};

struct QgsMember {
    std::string record_id;
    Attestation attestation;  // phase1 is always recorded true for members
    QgsOrigin origin = QgsOrigin::ExistingSls;
};

/// A quasi-gold standard: attested relevant records with provenance.
struct QGS {
    std::vector<QgsMember> members;  // sorted by record_id, unique
    std::string source_note;

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
    bool contains(std::string_view id) const;
    std::set<std::string> member_ids() const;
};

/// Normalizes, sorts and de-duplicates members; enforces phase1 = true.
QGS make_qgs(std::vector<QgsMember> members, std::string source_note = {});

struct QgsBuildResult {
    QGS qgs;
    std::size_t candidate_pool = 0;           // source records after the informal-survey screen
    std::size_t auto_excluded_informal = 0;   // phase-1 criterion: not a systematic study
    std::size_t rejected_by_attestation = 0;  // candidates whose recorded phases failed
};

/// Attestation input: record_id -> phases. Records marked informal-survey
/// are excluded before attestation is consulted; records without an input
/// entry are not selected. Throws DataError when an input id does not
/// resolve in `source_set`.
QgsBuildResult build_qgs_from_sls(const RecordSet& source_set,
                                  const std::map<std::string, Attestation>& selection,
                                  QgsOrigin origin = QgsOrigin::ExistingSls,
                                  std::string source_note = {});

struct DiversityDimension {
    std::map<std::string, std::size_t> distribution;  // value -> member count
    std::size_t distinct_count = 0;
    double normalized_entropy = 0.0;  // H(p)/ln(distinct_count); 0 when distinct <= 1
};

struct DiversityProfile {
    std::map<std::string, DiversityDimension> dimensions;  // by dimension name
    std::vector<std::string> unavailable;  // dimensions with wholly missing metadata
    double summary_score = 0.0;            // mean normalized entropy of available dimensions
};

inline constexpr const char* kDiversityDimensions[] = {"venue", "year", "first_author",
                                                       "publisher", "source_database"};

/// Spread of the QGS across venues, years, first authors, publishers and
/// source databases, as normalized Shannon entropy per dimension.
/// Members missing one dimension's value are bucketed as "(unknown)";
/// dimensions missing for every member are reported unavailable.
/// Throws DataError on an empty QGS or unresolved members.
DiversityProfile diversity(const QGS& qgs, const RecordSet& records);

struct QgsQualityReport {
    std::size_t size = 0;
    std::optional<double> relevance;  // fraction with full three-phase attestation
    std::optional<DiversityProfile> diversity;
    bool single_origin_flag = false;  // all members share one origin: coverage risk
    std::string single_origin;        // that origin, when flagged
    std::vector<std::string> unresolved_members;
    /// Size comparisons against user-supplied reference sizes; the tool
    /// deliberately has no built-in size threshold.
    std::vector<std::string> size_notes;
    std::vector<std::string> issues;
};

QgsQualityReport qgs_quality_report(
    const QGS& qgs, const RecordSet& records,
    const std::vector<std::pair<std::string, std::size_t>>& reference_sizes = {});

/// Seeded random split into (formation, validation) parts; the second
/// holds round(validation_fraction * size) members. No ratio is
/// prescribed. Deterministic for a given seed.
std::pair<QGS, QGS> split_qgs(const QGS& qgs, double validation_fraction, std::uint64_t seed);

}  // namespace qg
