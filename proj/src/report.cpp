#include "quasigold/report.hpp"

#include "quasigold/csv.hpp"
#include "quasigold/text.hpp"
#include "quasigold/version.hpp"

#include <cstdlib>
#include <ctime>
#include <ostream>

namespace qg {

std::string report_timestamp() {
    if (const char* pinned = std::getenv("QUASIGOLD_TIMESTAMP")) return pinned;
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

ordered_json to_json(const PipelineRun& run) {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = run.command;
    j["inputs"] = run.inputs;
    j["parameters"] = run.parameters;
    j["timestamp"] = run.timestamp;
    return j;
}

ordered_json to_json(const SearchConfig& config) {
    ordered_json j;
    j["field_scope"] = to_string(config.field_scope);
    j["sources"] = config.sources;
    if (config.subject_area_filter)
        j["subject_area_filter"] = *config.subject_area_filter;
    else
        j["subject_area_filter"] = nullptr;
    if (config.doc_type_filter) {
        auto arr = ordered_json::array();
        for (DocType t : *config.doc_type_filter) arr.push_back(to_string(t));
        j["doc_type_filter"] = arr;
    } else {
        j["doc_type_filter"] = nullptr;
    }
    if (config.cutoff_date) {
        j["cutoff_date"] = ordered_json::object();
        j["cutoff_date"]["year"] = config.cutoff_date->year;
        if (config.cutoff_date->month) j["cutoff_date"]["month"] = *config.cutoff_date->month;
    } else {
        j["cutoff_date"] = nullptr;
    }
    if (config.year_range)
        j["year_range"] = {config.year_range->min, config.year_range->max};
    else
        j["year_range"] = nullptr;
    j["require_systematic"] = config.require_systematic;
    j["empty_subject_policy"] =
        config.empty_subject_policy == EmptySubjectPolicy::Lenient ? "lenient" : "strict";
    return j;
}

ordered_json to_json(const DedupPolicy& policy) {
    ordered_json j;
    j["mode"] = policy.mode == DedupMode::Strict ? "strict" : "fuzzy";
    j["title_similarity_threshold"] = policy.title_similarity_threshold;
    j["require_author_match"] = policy.require_author_match;
    return j;
}

ordered_json to_json(const DedupReport& report) {
    ordered_json j;
    j["removed_count"] = report.removed_count;
    j["clusters"] = ordered_json::array();
    for (const auto& c : report.clusters) {
        ordered_json cj;
        cj["survivor"] = c.survivor_id;
        cj["members"] = c.member_ids;
        j["clusters"].push_back(cj);
    }
    j["near_duplicates"] = ordered_json::array();
    for (const auto& p : report.near_duplicates) {
        ordered_json pj;
        pj["id_a"] = p.id_a;
        pj["id_b"] = p.id_b;
        pj["similarity"] = p.similarity;
        j["near_duplicates"].push_back(pj);
    }
    return j;
}

ordered_json to_json(const ValidationReport& report) {
    ordered_json j;
    j["qgs_size"] = report.qgs_size;
    j["result_size"] = report.result_size;
    j["found_count"] = report.found.size();
    j["missed_count"] = report.missed.size();
    j["recall_percent"] = report.recall_percent;
    j["precision_percent"] = report.precision_percent;
    j["threshold"] = {report.threshold.low, report.threshold.high};
    j["verdict"] = to_string(report.verdict);
    j["found"] = report.found;
    j["missed"] = report.missed;
    if (!report.warnings.empty()) j["warnings"] = report.warnings;
    return j;
}

ordered_json to_json(const OverlapReport& report) {
    ordered_json j;
    j["set_names"] = report.set_names;
    j["union_size"] = report.union_size;
    // Chen-style contributions use the union of the provided sets as the
    // reference population; the true relevant population is unknown.
    j["reference_population"] = "union of provided sets";
    j["regions"] = ordered_json::array();
    for (const auto& r : report.regions) {
        ordered_json rj;
        rj["signature"] = r.signature;
        rj["count"] = r.count;
        j["regions"].push_back(rj);
    }
    j["contributions"] = ordered_json::array();
    for (const auto& c : report.contributions) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["size"] = c.size;
        cj["overall_percent"] = round_percent(c.overall);
        cj["exclusive_percent"] = round_percent(c.exclusive);
        cj["overlap_percent"] = round_percent(c.overlap);
        j["contributions"].push_back(cj);
    }
    return j;
}

ordered_json to_json(const MissDiagnosis& diagnosis) {
    ordered_json j;
    j["record_id"] = diagnosis.record_id;
    j["causes"] = ordered_json::array();
    for (const auto& c : diagnosis.causes) {
        ordered_json cj;
        cj["kind"] = to_string(c.kind);
        cj["label"] = c.label;
        cj["evidence"] = c.evidence;
        j["causes"].push_back(cj);
    }
    return j;
}

ordered_json to_json(const std::vector<MissDiagnosis>& diagnoses) {
    ordered_json j;
    j["missed_count"] = diagnoses.size();
    j["diagnoses"] = ordered_json::array();
    for (const auto& d : diagnoses) j["diagnoses"].push_back(to_json(d));
    ordered_json tally = ordered_json::object();
    for (const auto& [label, count] : cause_tally(diagnoses)) tally[label] = count;
    j["tally"] = tally;
    return j;
}

ordered_json to_json(const DiversityProfile& profile) {
    ordered_json j;
    j["dimensions"] = ordered_json::object();
    for (const auto& [name, dim] : profile.dimensions) {
        ordered_json dj;
        dj["distinct_count"] = dim.distinct_count;
        dj["normalized_entropy"] = dim.normalized_entropy;
        dj["distribution"] = dim.distribution;
        j["dimensions"][name] = dj;
    }
    j["unavailable"] = profile.unavailable;
    j["summary_score"] = profile.summary_score;
    return j;
}

ordered_json to_json(const QgsQualityReport& report) {
    ordered_json j;
    j["size"] = report.size;
    if (report.relevance)
        j["relevance"] = *report.relevance;
    else
        j["relevance"] = nullptr;
    j["diversity"] = report.diversity ? to_json(*report.diversity) : ordered_json(nullptr);
    j["single_origin_flag"] = report.single_origin_flag;
    if (report.single_origin_flag) j["single_origin"] = report.single_origin;
    j["size_notes"] = report.size_notes;
    j["unresolved_members"] = report.unresolved_members;
    j["issues"] = report.issues;
    return j;
}

ordered_json to_json(const CounterfactualReport& report) {
    ordered_json j;
    j["edit"] = report.edit_description;
    j["query_before"] = report.query_before;
    j["query_after"] = report.query_after;
    j["before"] = to_json(report.before);
    j["after"] = to_json(report.after);
    j["result_size_delta"] = report.result_size_delta;
    j["recall_delta_percent"] =
        round_percent(report.after.recall - report.before.recall);
    j["precision_delta_percent"] =
        round_percent(report.after.precision - report.before.precision);
    return j;
}

ordered_json to_json(const SnowballEvaluation& eval) {
    ordered_json j = to_json(eval.report);
    if (!eval.warnings.empty()) j["warnings"] = eval.warnings;
    return j;
}

ordered_json to_json(const EstimatorReport& report) {
    ordered_json j;
    j["sampler"] = to_string(report.sampler);
    if (!report.sampler_cluster.empty()) j["sampler_cluster"] = report.sampler_cluster;
    j["qgs_size"] = report.qgs_size;
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["true_recall"] = report.true_recall;
    j["mean_estimated_recall"] = report.mean_estimated;
    j["mean_bias"] = report.mean_bias;
    j["stddev_estimated"] = report.stddev_estimated;
    j["min_estimated"] = report.min_estimated;
    j["max_estimated"] = report.max_estimated;
    j["three_sigma_bound"] = report.three_sigma_bound;
    j["bias_within_bound"] = report.bias_within_bound;
    return j;
}

ordered_json diagnostics_json(const std::vector<Diagnostic>& diagnostics) {
    auto arr = ordered_json::array();
    for (const auto& d : diagnostics) {
        ordered_json dj;
        dj["line"] = d.line;
        dj["message"] = d.message;
        arr.push_back(dj);
    }
    return arr;
}

ordered_json make_report(const PipelineRun& run, const std::string& kind, ordered_json payload) {
    ordered_json j;
    j["pipeline_run"] = to_json(run);
    j["report_kind"] = kind;
    j[kind] = std::move(payload);
    return j;
}

namespace {

const char* kBold = "\033[1m";
const char* kDim = "\033[2m";
const char* kReset = "\033[0m";

void render_value(std::ostream& out, const ordered_json& value, const std::string& indent,
                  bool color);

void render_object(std::ostream& out, const ordered_json& obj, const std::string& indent,
                   bool color) {
    for (const auto& [key, value] : obj.items()) {
        out << indent;
        if (color) out << kBold;
        out << key << ":";
        if (color) out << kReset;
        if (value.is_object() || value.is_array()) {
            out << '\n';
            render_value(out, value, indent + "  ", color);
        } else {
            out << ' ';
            render_value(out, value, "", color);
            out << '\n';
        }
    }
}

void render_value(std::ostream& out, const ordered_json& value, const std::string& indent,
                  bool color) {
    if (value.is_object()) {
        render_object(out, value, indent, color);
    } else if (value.is_array()) {
        if (value.empty()) {
            out << indent;
            if (color) out << kDim;
            out << "(none)";
            if (color) out << kReset;
            out << '\n';
            return;
        }
        for (const auto& item : value) {
            if (item.is_object() || item.is_array()) {
                out << indent << "-\n";
                render_value(out, item, indent + "  ", color);
            } else {
                out << indent << "- " << (item.is_string() ? item.get<std::string>() : item.dump())
                    << '\n';
            }
        }
    } else if (value.is_string()) {
        out << value.get<std::string>();
    } else {
        out << value.dump();
    }
}

void flatten(const ordered_json& value, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (value.is_object()) {
        for (const auto& [key, child] : value.items())
            flatten(child, path.empty() ? key : path + "." + key, rows);
    } else if (value.is_array()) {
        std::size_t i = 0;
        for (const auto& child : value) {
            flatten(child, path + "[" + std::to_string(i) + "]", rows);
            ++i;
        }
    } else {
        rows.emplace_back(path, value.is_string() ? value.get<std::string>() : value.dump());
    }
}

}  // namespace

void render_text(std::ostream& out, const ordered_json& report, bool color) {
    render_value(out, report, "", color);
}

void render_csv(std::ostream& out, const ordered_json& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    csv::write_row(out, {"key", "value"});
    for (const auto& [k, v] : rows) csv::write_row(out, {k, v});
}

std::string qgs_to_json_text(const QGS& qgs) {
    ordered_json j;
    j["source_note"] = qgs.source_note;
    j["members"] = ordered_json::array();
    for (const auto& m : qgs.members) {
        ordered_json mj;
        mj["record_id"] = m.record_id;
        mj["origin"] = to_string(m.origin);
        mj["phase1"] = m.attestation.phase1.value_or(true);
        if (m.attestation.phase2) mj["phase2"] = *m.attestation.phase2;
        if (m.attestation.phase3) mj["phase3"] = *m.attestation.phase3;
        j["members"].push_back(mj);
    }
    return j.dump(2) + "\n";
}

QGS qgs_from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("QGS JSON parse error: ") + e.what());
    }
    std::vector<QgsMember> members;
    if (!j.contains("members") || !j["members"].is_array())
        throw DataError("QGS JSON must contain a 'members' array");
    for (const auto& mj : j["members"]) {
        QgsMember m;
        if (!mj.contains("record_id"))
            throw DataError("QGS member without record_id");
        m.record_id = mj["record_id"].get<std::string>();
        if (mj.contains("origin")) {
            auto origin = parse_qgs_origin(mj["origin"].get<std::string>());
            if (!origin) throw DataError("unknown QGS origin: " + mj["origin"].dump());
            m.origin = *origin;
        }
        if (mj.contains("phase1") && !mj["phase1"].get<bool>())
            throw DataError("QGS member '" + m.record_id + "' has phase1=false; members must "
                            "pass the phase-1 screen");
        m.attestation.phase1 = true;
        if (mj.contains("phase2")) m.attestation.phase2 = mj["phase2"].get<bool>();
        if (mj.contains("phase3")) m.attestation.phase3 = mj["phase3"].get<bool>();
        members.push_back(std::move(m));
    }
    return make_qgs(std::move(members), j.value("source_note", std::string()));
}

}  // namespace qg
