#pragma once

#include "quasigold/dedup.hpp"
#include "quasigold/diagnose.hpp"
#include "quasigold/ingest.hpp"
#include "quasigold/metrics.hpp"
#include "quasigold/qgs.hpp"
#include "quasigold/simgen.hpp"
#include "quasigold/snowball.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace qg {

using ordered_json = nlohmann::ordered_json;

/// Repeatability record embedded in every report: re-running the command
/// with the recorded inputs and parameters reproduces the report.
struct PipelineRun {
    std::vector<std::string> command;  // argv as invoked
    ordered_json inputs = ordered_json::object();      // file paths by role
    ordered_json parameters = ordered_json::object();  // query text, configs, policies
    std::string timestamp;  // ISO-8601; the one field excluded from comparisons
};

/// Current time, or the QUASIGOLD_TIMESTAMP env var when set (pins
/// reports for byte-identical comparison).
std::string report_timestamp();

ordered_json to_json(const PipelineRun& run);
ordered_json to_json(const SearchConfig& config);
ordered_json to_json(const DedupPolicy& policy);
ordered_json to_json(const DedupReport& report);
ordered_json to_json(const ValidationReport& report);
ordered_json to_json(const OverlapReport& report);
ordered_json to_json(const MissDiagnosis& diagnosis);
ordered_json to_json(const std::vector<MissDiagnosis>& diagnoses);
ordered_json to_json(const DiversityProfile& profile);
ordered_json to_json(const QgsQualityReport& report);
ordered_json to_json(const CounterfactualReport& report);
ordered_json to_json(const SnowballEvaluation& eval);
ordered_json to_json(const EstimatorReport& report);
ordered_json diagnostics_json(const std::vector<Diagnostic>& diagnostics);

/// Wraps a payload with the pipeline-run block: the self-describing
/// report envelope every subcommand emits.
ordered_json make_report(const PipelineRun& run, const std::string& kind,
                         ordered_json payload);

/// Plain-text rendering derived from the JSON (single source of truth).
/// Colors only when `color` is set; QUASIGOLD_NO_COLOR is handled by the
/// caller.
void render_text(std::ostream& out, const ordered_json& report, bool color = false);

/// Flattened key,value CSV rendering of any report JSON.
void render_csv(std::ostream& out, const ordered_json& report);

// -- QGS persistence --------------------------------------------------------

std::string qgs_to_json_text(const QGS& qgs);

/// Throws DataError on schema violations (member without passing phase1,
/// unknown origin).
QGS qgs_from_json_text(const std::string& text);

}  // namespace qg
