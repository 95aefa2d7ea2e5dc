#include "quasigold/qgs.hpp"

#include "quasigold/dedup.hpp"
#include "quasigold/rng.hpp"
#include "quasigold/text.hpp"

#include <algorithm>
#include <cmath>

namespace qg {

std::string to_string(QgsOrigin o) {
    switch (o) {
        case QgsOrigin::ManualSearch: return "manual-search";
        case QgsOrigin::InformalSearch: return "informal-search";
        case QgsOrigin::ExpertRecommendation: return "expert-recommendation";
        case QgsOrigin::ExistingSls: return "existing-SLS";
        case QgsOrigin::Snowball: return "snowball";
    }
    return "existing-SLS";
}

std::optional<QgsOrigin> parse_qgs_origin(std::string_view s) {
    std::string v = to_lower_ascii(trim(s));
    if (v == "manual-search") return QgsOrigin::ManualSearch;
    if (v == "informal-search") return QgsOrigin::InformalSearch;
    if (v == "expert-recommendation") return QgsOrigin::ExpertRecommendation;
    if (v == "existing-sls") return QgsOrigin::ExistingSls;
    if (v == "snowball") return QgsOrigin::Snowball;
    return std::nullopt;
}

bool QGS::contains(std::string_view id) const {
    auto it = std::lower_bound(
        members.begin(), members.end(), id,
        [](const QgsMember& m, std::string_view v) { return m.record_id < v; });
    return it != members.end() && it->record_id == id;
}

std::set<std::string> QGS::member_ids() const {
    std::set<std::string> out;
    for (const auto& m : members) out.insert(m.record_id);
    return out;
}

QGS make_qgs(std::vector<QgsMember> members, std::string source_note) {
    QGS qgs;
    qgs.source_note = std::move(source_note);
    std::sort(members.begin(), members.end(),
              [](const QgsMember& a, const QgsMember& b) { return a.record_id < b.record_id; });
    for (QgsMember& m : members) {
        if (!qgs.members.empty() && qgs.members.back().record_id == m.record_id) continue;
        m.attestation.phase1 = true;  // membership implies the phase-1 screen
        qgs.members.push_back(std::move(m));
    }
    return qgs;
}

QgsBuildResult build_qgs_from_sls(const RecordSet& source_set,
                                  const std::map<std::string, Attestation>& selection,
                                  QgsOrigin origin, std::string source_note) {
    for (const auto& [id, att] : selection) {
        if (!source_set.contains(id))
            throw DataError("attestation references unknown record_id: " + id);
    }
    QgsBuildResult out;
    std::vector<QgsMember> members;
    for (const BibRecord& rec : source_set.records) {
        if (rec.study_design == StudyDesign::InformalSurvey) {
            ++out.auto_excluded_informal;
            continue;
        }
        ++out.candidate_pool;
        auto it = selection.find(rec.record_id);
        if (it == selection.end()) continue;  // not selected
        if (it->second.any_recorded_failed()) {
            ++out.rejected_by_attestation;
            continue;
        }
        QgsMember m;
        m.record_id = rec.record_id;
        m.attestation = it->second;
        m.origin = origin;
        members.push_back(std::move(m));
    }
    out.qgs = make_qgs(std::move(members), std::move(source_note));
    return out;
}

namespace {

double normalized_entropy(const std::map<std::string, std::size_t>& dist) {
    std::size_t total = 0;
    for (const auto& [_, c] : dist) total += c;
    if (dist.size() <= 1 || total == 0) return 0.0;
    double h = 0.0;
    for (const auto& [_, c] : dist) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log(p);
    }
    return h / std::log(static_cast<double>(dist.size()));
}

std::string join_set(const std::set<std::string>& s, const char* sep) {
    std::string out;
    bool first = true;
    for (const auto& v : s) {
        if (!first) out += sep;
        out += v;
        first = false;
    }
    return out;
}

}  // namespace

DiversityProfile diversity(const QGS& qgs, const RecordSet& records) {
    if (qgs.empty()) throw DataError("diversity of an empty QGS is undefined");

    std::vector<const BibRecord*> recs;
    recs.reserve(qgs.size());
    for (const auto& m : qgs.members) {
        const BibRecord* r = records.find(m.record_id);
        if (!r) throw DataError("QGS member does not resolve in record set: " + m.record_id);
        recs.push_back(r);
    }

    auto value_of = [](const BibRecord& r, std::string_view dim) -> std::string {
        if (dim == "venue") return r.venue;
        if (dim == "year") return r.year ? std::to_string(*r.year) : std::string();
        if (dim == "first_author") return first_author_surname(r);
        if (dim == "publisher") return r.publisher;
        return join_set(r.source_databases, "+");  // source_database
    };

    DiversityProfile profile;
    double entropy_sum = 0.0;
    std::size_t available = 0;
    for (const char* dim : kDiversityDimensions) {
        std::map<std::string, std::size_t> dist;
        std::size_t missing = 0;
        for (const BibRecord* r : recs) {
            std::string v = value_of(*r, dim);
            if (v.empty()) {
                ++missing;
                ++dist["(unknown)"];
            } else {
                ++dist[v];
            }
        }
        if (missing == recs.size()) {
            profile.unavailable.push_back(dim);
            continue;
        }
        DiversityDimension d;
        d.distribution = std::move(dist);
        d.distinct_count = d.distribution.size();
        d.normalized_entropy = normalized_entropy(d.distribution);
        entropy_sum += d.normalized_entropy;
        ++available;
        profile.dimensions.emplace(dim, std::move(d));
    }
    profile.summary_score = available ? entropy_sum / static_cast<double>(available) : 0.0;
    return profile;
}

QgsQualityReport qgs_quality_report(
    const QGS& qgs, const RecordSet& records,
    const std::vector<std::pair<std::string, std::size_t>>& reference_sizes) {
    QgsQualityReport report;
    report.size = qgs.size();

    if (qgs.empty()) {
        report.issues.push_back("QGS is empty: all quality metrics unavailable");
        return report;
    }

    std::size_t full = 0;
    for (const auto& m : qgs.members)
        if (m.attestation.full()) ++full;
    report.relevance = static_cast<double>(full) / static_cast<double>(qgs.size());

    bool single = std::all_of(qgs.members.begin(), qgs.members.end(), [&](const QgsMember& m) {
        return m.origin == qgs.members.front().origin;
    });
    if (single) {
        report.single_origin_flag = true;
        report.single_origin = to_string(qgs.members.front().origin);
        report.issues.push_back(
            "all members share origin '" + report.single_origin +
            "': coverage risk; consider supplementing with other identification approaches");
    }

    QGS resolvable;
    for (const auto& m : qgs.members) {
        if (records.find(m.record_id))
            resolvable.members.push_back(m);
        else
            report.unresolved_members.push_back(m.record_id);
    }
    if (!report.unresolved_members.empty())
        report.issues.push_back(std::to_string(report.unresolved_members.size()) +
                                " member id(s) do not resolve in the record set");
    if (!resolvable.empty()) report.diversity = diversity(resolvable, records);

    for (const auto& [label, ref] : reference_sizes) {
        std::string rel = qgs.size() < ref ? "smaller than" : (qgs.size() > ref ? "larger than" : "equal to");
        report.size_notes.push_back("QGS size " + std::to_string(qgs.size()) + " is " + rel + " " +
                                    label + " (" + std::to_string(ref) + ")");
    }
    return report;
}

std::pair<QGS, QGS> split_qgs(const QGS& qgs, double validation_fraction, std::uint64_t seed) {
    if (validation_fraction < 0.0 || validation_fraction > 1.0)
        throw DataError("validation fraction must be in [0,1]");
    std::vector<std::size_t> order(qgs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);
    std::size_t n_validation = static_cast<std::size_t>(
        std::llround(validation_fraction * static_cast<double>(qgs.size())));

    std::vector<QgsMember> validation, formation;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i < n_validation ? validation : formation).push_back(qgs.members[order[i]]);
    }
    return {make_qgs(std::move(formation), qgs.source_note),
            make_qgs(std::move(validation), qgs.source_note)};
}

}  // namespace qg
