#include "quasigold/metrics.hpp"

#include "quasigold/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qg {

std::string to_string(Verdict v) {
    return v == Verdict::Accept ? "accept" : "revise";
}

double round_percent(double fraction) {
    return std::floor(fraction * 100.0 * 100.0 + 0.5) / 100.0;
}

double recall(const QGS& qgs, const RecordSet& result) {
    if (qgs.empty()) throw DataError("recall against an empty QGS is undefined");
    std::size_t found = 0;
    for (const auto& m : qgs.members)
        if (result.contains(m.record_id)) ++found;
    return static_cast<double>(found) / static_cast<double>(qgs.size());
}

double precision(const QGS& qgs, const RecordSet& result) {
    if (result.records.empty()) throw DataError("precision of an empty result is undefined");
    std::size_t relevant = 0;
    for (const auto& m : qgs.members)
        if (result.contains(m.record_id)) ++relevant;
    return static_cast<double>(relevant) / static_cast<double>(result.size());
}

ValidationReport validate_search(const QGS& qgs, const RecordSet& result,
                                 RecallThreshold threshold) {
    if (qgs.empty()) throw DataError("cannot validate against an empty QGS");
    ValidationReport report;
    report.qgs_size = qgs.size();
    report.result_size = result.size();
    report.threshold = threshold;
    for (const auto& m : qgs.members) {
        (result.contains(m.record_id) ? report.found : report.missed).push_back(m.record_id);
    }
    report.recall = static_cast<double>(report.found.size()) / static_cast<double>(qgs.size());
    report.precision = result.records.empty()
                           ? 0.0
                           : static_cast<double>(report.found.size()) /
                                 static_cast<double>(result.size());
    if (result.records.empty())
        report.warnings.push_back("result set is empty; precision reported as 0");
    report.recall_percent = round_percent(report.recall);
    report.precision_percent = round_percent(report.precision);
    report.verdict = report.recall * 100.0 >= threshold.low ? Verdict::Accept : Verdict::Revise;
    return report;
}

OverlapReport overlap(const std::vector<RecordSet>& sets) {
    if (sets.size() < 2 || sets.size() > 6)
        throw DataError("overlap requires between 2 and 6 sets, got " +
                       std::to_string(sets.size()));

    OverlapReport report;
    for (const auto& s : sets) report.set_names.push_back(s.name);

    std::map<std::string, unsigned> membership;  // id -> bitmask
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (const auto& rec : sets[i].records) membership[rec.record_id] |= 1u << i;
    }
    report.union_size = membership.size();

    const unsigned n_masks = (1u << sets.size()) - 1;
    std::vector<std::size_t> counts(n_masks + 1, 0);
    for (const auto& [_, mask] : membership) ++counts[mask];

    for (unsigned mask = 1; mask <= n_masks; ++mask) {
        OverlapRegion region;
        region.mask = mask;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (mask & (1u << i)) {
                if (!region.signature.empty()) region.signature += '&';
                region.signature += report.set_names[i];
            }
        }
        region.count = counts[mask];
        report.regions.push_back(std::move(region));
    }

    const double uni = static_cast<double>(report.union_size);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        SourceContribution c;
        c.name = report.set_names[i];
        std::size_t exclusive = 0, total = 0;
        for (const auto& [_, mask] : membership) {
            if (mask & (1u << i)) {
                ++total;
                if (mask == (1u << i)) ++exclusive;
            }
        }
        c.size = total;
        if (report.union_size > 0) {
            c.overall = static_cast<double>(total) / uni;
            c.exclusive = static_cast<double>(exclusive) / uni;
            c.overlap = static_cast<double>(total - exclusive) / uni;
        }
        report.contributions.push_back(std::move(c));
    }
    return report;
}

}  // namespace qg
