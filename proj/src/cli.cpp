#include "quasigold/cli.hpp"

#include "quasigold/csv.hpp"
#include "quasigold/dedup.hpp"
#include "quasigold/diagnose.hpp"
#include "quasigold/ingest.hpp"
#include "quasigold/metrics.hpp"
#include "quasigold/qgs.hpp"
#include "quasigold/query.hpp"
#include "quasigold/report.hpp"
#include "quasigold/simgen.hpp"
#include "quasigold/snowball.hpp"
#include "quasigold/text.hpp"
#include "quasigold/version.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qg::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

bool has_canonical_header(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string first;
    std::getline(in, first);
    if (!first.empty() && first.back() == '\r') first.pop_back();
    if (first.rfind("\xEF\xBB\xBF", 0) == 0) first.erase(0, 3);
    return first == kCanonicalCsvHeader;
}

struct LoadedSet {
    RecordSet set;
    std::vector<Diagnostic> diagnostics;
};

/// Format by extension; CSVs with the canonical header round-trip
/// through the canonical column map, everything else uses Scopus-style
/// defaults.
LoadedSet load_record_set(const std::string& path, const std::string& name,
                          const std::string& source_db = {}) {
    std::string ext = to_lower_ascii(fs::path(path).extension().string());
    ParseResult parsed;
    if (ext == ".bib") {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot open file: " + path);
        parsed = parse_bibtex(in);
    } else if (ext == ".ris") {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot open file: " + path);
        parsed = parse_ris(in);
    } else if (ext == ".csv") {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot open file: " + path);
        CsvColumnMap map =
            has_canonical_header(path) ? CsvColumnMap::canonical() : CsvColumnMap::scopus();
        if (!source_db.empty()) map.source_database_value = source_db;
        parsed = parse_csv(in, map);
    } else {
        throw DataError("unsupported input extension '" + ext + "' for " + path +
                        " (expected .bib, .ris or .csv)");
    }
    if (!source_db.empty()) {
        for (auto& rec : parsed.records) rec.source_databases.insert(source_db);
    }
    LoadedSet out;
    out.set = make_record_set(name.empty() ? fs::path(path).stem().string() : name,
                              std::move(parsed.records));
    out.diagnostics = std::move(parsed.diagnostics);
    return out;
}

void print_diagnostics(std::ostream& err, const std::string& path,
                       const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        err << path << ":" << d.line << ": " << d.message << "\n";
    }
}

QGS load_qgs(const std::string& path) {
    return qgs_from_json_text(read_file(path));
}

RecallThreshold parse_threshold(const std::string& text) {
    RecallThreshold t;
    if (text.empty()) return t;
    auto comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            t.low = std::stod(text);
            t.high = std::max(t.low, t.high);
        } else {
            t.low = std::stod(text.substr(0, comma));
            t.high = std::stod(text.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("--threshold", "expected <low> or <low,high>");
    }
    if (t.low > t.high) throw CLI::ValidationError("--threshold", "low exceeds high");
    return t;
}

// Shared SearchConfig flags: mirrors the SearchConfig fields 1:1.
struct ConfigFlags {
    std::string scope = "title-abs-key";
    std::vector<std::string> sources;
    std::vector<std::string> subject_areas;
    std::vector<std::string> doc_types;
    std::string cutoff;
    std::string year_range;
    bool require_systematic = false;
    bool strict_empty_subject = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--scope", scope, "Field scope: title or title-abs-key")
            ->check(CLI::IsMember({"title", "title-abs-key"}));
        cmd->add_option("--source", sources, "Database searched (repeatable)");
        cmd->add_option("--subject-area", subject_areas, "Subject-area filter (repeatable)");
        cmd->add_option("--doc-type", doc_types, "Document-type filter (repeatable)");
        cmd->add_option("--cutoff", cutoff, "Search cutoff date YYYY[-MM]");
        cmd->add_option("--year-range", year_range, "Publication year range <min>:<max>");
        cmd->add_flag("--require-systematic", require_systematic,
                      "Drop records known to be informal surveys or primary studies");
        cmd->add_flag("--strict-empty-subject", strict_empty_subject,
                      "Fail records without subject areas under a subject filter "
                      "(default passes them)");
    }

    SearchConfig build() const {
        SearchConfig cfg;
        if (auto s = parse_field_scope(scope)) cfg.field_scope = *s;
        cfg.sources.insert(sources.begin(), sources.end());
        if (!subject_areas.empty())
            cfg.subject_area_filter =
                std::set<std::string>(subject_areas.begin(), subject_areas.end());
        if (!doc_types.empty()) {
            std::set<DocType> types;
            for (const auto& t : doc_types) types.insert(parse_doc_type(t));
            cfg.doc_type_filter = types;
        }
        if (!cutoff.empty()) {
            CutoffDate cd;
            try {
                cd.year = std::stoi(cutoff.substr(0, 4));
                if (cutoff.size() >= 7 && cutoff[4] == '-')
                    cd.month = std::stoi(cutoff.substr(5, 2));
            } catch (const std::exception&) {
                throw DataError("bad --cutoff value '" + cutoff + "', expected YYYY[-MM]");
            }
            cfg.cutoff_date = cd;
        }
        if (!year_range.empty()) {
            auto colon = year_range.find(':');
            if (colon == std::string::npos)
                throw DataError("bad --year-range value '" + year_range + "', expected min:max");
            YearRange yr;
            try {
                yr.min = std::stoi(year_range.substr(0, colon));
                yr.max = std::stoi(year_range.substr(colon + 1));
            } catch (const std::exception&) {
                throw DataError("bad --year-range value '" + year_range + "'");
            }
            if (yr.min > yr.max) throw DataError("--year-range min exceeds max");
            cfg.year_range = yr;
        }
        cfg.require_systematic = require_systematic;
        cfg.empty_subject_policy =
            strict_empty_subject ? EmptySubjectPolicy::Strict : EmptySubjectPolicy::Lenient;
        return cfg;
    }
};

struct QueryFlags {
    std::string query_text;
    std::string query_file;

    void attach(CLI::App* cmd, bool required = true) {
        auto* q = cmd->add_option("--query", query_text, "Boolean search string");
        auto* f = cmd->add_option("--query-file", query_file, "File containing the search string");
        q->excludes(f);
        if (required) {
            // enforced manually so the error is a usage error with a clear message
        }
    }

    Query load() const {
        std::string text = query_text;
        if (text.empty() && !query_file.empty()) text = trim(read_file(query_file));
        if (text.empty()) throw DataError("no query given: use --query or --query-file");
        return parse_query(text);
    }
};

struct EmitFlags {
    std::string format = "json";

    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "Report format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
    }
};

void emit(std::ostream& out, const ordered_json& report, const EmitFlags& flags, bool color) {
    if (flags.format == "json") {
        out << report.dump(2) << "\n";
    } else if (flags.format == "csv") {
        render_csv(out, report);
    } else {
        render_text(out, report, color);
    }
}

PipelineRun make_run(const std::vector<std::string>& args) {
    PipelineRun run;
    run.command = args;
    run.timestamp = report_timestamp();
    return run;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             bool color) {
    CLI::App app{"QGS-based validation of systematic-literature-study search strategies"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    // ---- ingest ----
    auto* ingest = app.add_subcommand(
        "ingest", "Parse .bib/.ris/.csv exports into one canonical record set");
    std::vector<std::string> ingest_files;
    std::string ingest_name, ingest_out;
    std::vector<std::string> ingest_sources;
    EmitFlags ingest_emit;
    ingest->add_option("files", ingest_files, "Input files")->required()->expected(-1);
    ingest->add_option("--name", ingest_name, "Record-set name");
    ingest->add_option("--out", ingest_out, "Canonical CSV output path");
    ingest->add_option("--source-db", ingest_sources,
                       "Source database per input file (one value for all, or one per file)");
    ingest_emit.attach(ingest);

    // ---- dedup ----
    auto* dedup_cmd = app.add_subcommand("dedup", "Detect and merge duplicate records");
    std::string dedup_in, dedup_out, dedup_mode = "strict";
    double dedup_sim = 0.90;
    bool dedup_no_author = false;
    EmitFlags dedup_emit;
    dedup_cmd->add_option("set", dedup_in, "Record-set CSV")->required();
    dedup_cmd->add_option("--dedup,--mode", dedup_mode, "Duplicate criterion")
        ->check(CLI::IsMember({"strict", "fuzzy"}));
    dedup_cmd->add_option("--title-similarity", dedup_sim,
                          "Token-Jaccard threshold for fuzzy mode (default 0.90)")
        ->check(CLI::Range(0.0, 1.0));
    dedup_cmd->add_flag("--no-require-author-match", dedup_no_author,
                        "Do not require matching first-author surnames");
    dedup_cmd->add_option("--out", dedup_out, "Deduplicated canonical CSV output");
    dedup_emit.attach(dedup_cmd);

    // ---- search ----
    auto* search_cmd = app.add_subcommand("search", "Run a boolean search over a record set");
    std::string search_corpus, search_out, search_name;
    QueryFlags search_query;
    ConfigFlags search_cfg;
    EmitFlags search_emit;
    search_cmd->add_option("corpus", search_corpus, "Corpus CSV")->required();
    search_query.attach(search_cmd);
    search_cfg.attach(search_cmd);
    search_cmd->add_option("--out", search_out, "Result canonical CSV output");
    search_cmd->add_option("--name", search_name, "Result-set name");
    search_emit.attach(search_cmd);

    // ---- validate ----
    auto* validate_cmd =
        app.add_subcommand("validate", "Recall/precision of a search result against a QGS");
    std::string validate_qgs, validate_result, validate_threshold;
    EmitFlags validate_emit;
    validate_cmd->add_option("--qgs", validate_qgs, "QGS JSON file")->required();
    validate_cmd->add_option("--result", validate_result, "Search-result CSV")->required();
    validate_cmd->add_option("--threshold", validate_threshold,
                             "Accept threshold in percent: <low> or <low,high> (default 70,80)");
    validate_emit.attach(validate_cmd);

    // ---- overlap ----
    auto* overlap_cmd =
        app.add_subcommand("overlap", "Venn regions and per-source contributions of 2..6 sets");
    std::vector<std::string> overlap_files;
    std::string overlap_names, overlap_out;
    EmitFlags overlap_emit;
    overlap_cmd->add_option("sets", overlap_files, "Record-set CSVs")->required()->expected(-1);
    overlap_cmd->add_option("--names", overlap_names, "Comma-separated set names");
    overlap_cmd->add_option("--out", overlap_out, "Region counts CSV (signature,count)");
    overlap_emit.attach(overlap_cmd);

    // ---- diagnose ----
    auto* diagnose_cmd =
        app.add_subcommand("diagnose", "Explain why the search missed each QGS member");
    std::string diag_qgs, diag_result, diag_corpus, diag_tally_out, diag_generic;
    QueryFlags diag_query;
    ConfigFlags diag_cfg;
    EmitFlags diag_emit;
    diagnose_cmd->add_option("--qgs", diag_qgs, "QGS JSON file")->required();
    diagnose_cmd->add_option("--result", diag_result, "Search-result CSV")->required();
    diagnose_cmd->add_option("--corpus", diag_corpus, "Corpus CSV the QGS resolves in")
        ->required();
    diag_query.attach(diagnose_cmd);
    diag_cfg.attach(diagnose_cmd);
    diagnose_cmd->add_option("--generic-terms", diag_generic,
                             "Comma-separated generic-excluder lint list (default software,quality)");
    diagnose_cmd->add_option("--tally-out", diag_tally_out, "Per-cause tally CSV output");
    diag_emit.attach(diagnose_cmd);

    // ---- qgs-quality ----
    auto* quality_cmd =
        app.add_subcommand("qgs-quality", "Relevance, size and diversity of a QGS");
    std::string quality_qgs, quality_records;
    std::vector<std::string> quality_refs;
    EmitFlags quality_emit;
    quality_cmd->add_option("--qgs", quality_qgs, "QGS JSON file")->required();
    quality_cmd->add_option("--records", quality_records, "Record set the QGS resolves in")
        ->required();
    quality_cmd->add_option("--reference-size", quality_refs,
                            "Size comparison reference LABEL=N (repeatable)");
    quality_emit.attach(quality_cmd);

    // ---- snowball ----
    auto* snowball_cmd = app.add_subcommand(
        "snowball", "One-step forward snowball over a citation table");
    std::string sb_seeds, sb_citations, sb_corpus, sb_out, sb_qgs, sb_threshold;
    EmitFlags sb_emit;
    snowball_cmd->add_option("--seeds", sb_seeds, "Seed ids: text file (one per line) or QGS JSON")
        ->required();
    snowball_cmd->add_option("--citations", sb_citations, "citations.csv (citing_id,cited_id)")
        ->required();
    snowball_cmd->add_option("--corpus", sb_corpus, "Corpus CSV")->required();
    snowball_cmd->add_option("--out", sb_out, "Snowball result canonical CSV output");
    snowball_cmd->add_option("--qgs", sb_qgs, "Evaluate the snowball sample against this QGS");
    snowball_cmd->add_option("--threshold", sb_threshold, "Accept threshold (with --qgs)");
    sb_emit.attach(snowball_cmd);

    // ---- simulate ----
    auto* simulate_cmd = app.add_subcommand(
        "simulate", "Generate a synthetic corpus with known ground truth; optionally run the "
                    "QGS estimator experiment");
    std::string sim_config_path, sim_out_corpus, sim_out_truth, sim_sampler = "uniform";
    std::uint64_t sim_seed_override = 0, sim_exp_seed = 1;
    bool sim_seed_given = false, sim_experiment = false;
    std::size_t sim_qgs_size = 10, sim_trials = 200;
    QueryFlags sim_query;
    ConfigFlags sim_cfg;
    EmitFlags sim_emit;
    simulate_cmd->add_option("--config", sim_config_path, "SimConfig JSON file")->required();
    simulate_cmd->add_option("--out-corpus", sim_out_corpus, "Corpus canonical CSV output");
    simulate_cmd->add_option("--out-truth", sim_out_truth,
                             "Ground-truth relevant ids output (one per line)");
    simulate_cmd->add_option("--seed", sim_seed_override, "Override the config seed")
        ->each([&](const std::string&) { sim_seed_given = true; });
    simulate_cmd->add_flag("--experiment", sim_experiment,
                           "Run the QGS estimator experiment instead of exporting the corpus");
    sim_query.attach(simulate_cmd, false);
    sim_cfg.attach(simulate_cmd);
    simulate_cmd->add_option("--sampler", sim_sampler, "QGS sampler")
        ->check(CLI::IsMember({"uniform", "single-venue", "single-year"}));
    simulate_cmd->add_option("--qgs-size", sim_qgs_size, "QGS sample size per trial");
    simulate_cmd->add_option("--trials", sim_trials, "Number of trials");
    simulate_cmd->add_option("--exp-seed", sim_exp_seed, "Experiment sampling seed");
    sim_emit.attach(simulate_cmd);

    // ---- counterfactual ----
    auto* cf_cmd = app.add_subcommand(
        "counterfactual", "Before/after recall and precision for a proposed query edit");
    std::string cf_edit, cf_corpus, cf_qgs, cf_threshold;
    QueryFlags cf_query;
    ConfigFlags cf_cfg;
    EmitFlags cf_emit;
    cf_query.attach(cf_cmd);
    cf_cmd->add_option("--edit", cf_edit,
                       "Edit: add-or:<conjunct>:<phrase> | remove-and:<conjunct> | "
                       "scope:<scope> | filter:<name>=<value>")
        ->required();
    cf_cmd->add_option("--corpus", cf_corpus, "Corpus CSV")->required();
    cf_cmd->add_option("--qgs", cf_qgs, "QGS JSON file")->required();
    cf_cmd->add_option("--threshold", cf_threshold, "Accept threshold");
    cf_cfg.attach(cf_cmd);
    cf_emit.attach(cf_cmd);

    // ---- parse ----
    std::vector<const char*> argv;
    argv.push_back(kToolName);
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << std::flush;
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All) << std::flush;
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        PipelineRun run = make_run(args);

        if (*ingest) {
            std::vector<BibRecord> all;
            auto files_json = ordered_json::array();
            auto per_file = ordered_json::array();
            for (std::size_t i = 0; i < ingest_files.size(); ++i) {
                std::string source;
                if (ingest_sources.size() == 1)
                    source = ingest_sources[0];
                else if (i < ingest_sources.size())
                    source = ingest_sources[i];
                LoadedSet loaded = load_record_set(ingest_files[i], "tmp", source);
                print_diagnostics(err, ingest_files[i], loaded.diagnostics);
                ordered_json fj;
                fj["file"] = ingest_files[i];
                fj["parsed"] = loaded.set.size();
                fj["diagnostics"] = diagnostics_json(loaded.diagnostics);
                per_file.push_back(fj);
                files_json.push_back(ingest_files[i]);
                for (auto& rec : loaded.set.records) all.push_back(std::move(rec));
            }
            std::size_t total_parsed = all.size();
            RecordSet set = make_record_set(
                ingest_name.empty() ? "ingested" : ingest_name, std::move(all));
            run.inputs["files"] = files_json;
            run.parameters["name"] = set.name;
            ordered_json payload;
            payload["files"] = per_file;
            payload["total_parsed"] = total_parsed;
            payload["merged_on_record_id"] = total_parsed - set.size();
            payload["set_size"] = set.size();
            if (!ingest_out.empty()) {
                write_file(ingest_out, canonical_csv_string(set));
                payload["out"] = ingest_out;
            }
            emit(out, make_report(run, "ingest", payload), ingest_emit, color);
            return 0;
        }

        if (*dedup_cmd) {
            LoadedSet loaded = load_record_set(dedup_in, "");
            print_diagnostics(err, dedup_in, loaded.diagnostics);
            DedupPolicy policy;
            policy.mode = dedup_mode == "fuzzy" ? DedupMode::Fuzzy : DedupMode::Strict;
            policy.title_similarity_threshold = dedup_sim;
            policy.require_author_match = !dedup_no_author;
            DedupResult result = dedup(loaded.set, policy);
            run.inputs["set"] = dedup_in;
            run.parameters["dedup_policy"] = to_json(policy);
            ordered_json payload = to_json(result.report);
            payload["input_size"] = loaded.set.size();
            payload["output_size"] = result.set.size();
            if (!dedup_out.empty()) {
                write_file(dedup_out, canonical_csv_string(result.set));
                payload["out"] = dedup_out;
            }
            emit(out, make_report(run, "dedup", payload), dedup_emit, color);
            return 0;
        }

        if (*search_cmd) {
            LoadedSet loaded = load_record_set(search_corpus, "");
            print_diagnostics(err, search_corpus, loaded.diagnostics);
            Query query = search_query.load();
            SearchConfig cfg = search_cfg.build();
            RecordSet result = run_search(query, loaded.set, cfg);
            if (!search_name.empty()) result.name = search_name;
            run.inputs["corpus"] = search_corpus;
            run.parameters["query"] = query.text();
            run.parameters["search_config"] = to_json(cfg);
            ordered_json payload;
            payload["corpus_size"] = loaded.set.size();
            payload["result_size"] = result.size();
            payload["result_name"] = result.name;
            if (!search_out.empty()) {
                write_file(search_out, canonical_csv_string(result));
                payload["out"] = search_out;
            }
            emit(out, make_report(run, "search", payload), search_emit, color);
            return 0;
        }

        if (*validate_cmd) {
            QGS qgs = load_qgs(validate_qgs);
            LoadedSet result = load_record_set(validate_result, "");
            print_diagnostics(err, validate_result, result.diagnostics);
            ValidationReport report =
                validate_search(qgs, result.set, parse_threshold(validate_threshold));
            run.inputs["qgs"] = validate_qgs;
            run.inputs["result"] = validate_result;
            run.parameters["threshold"] = {report.threshold.low, report.threshold.high};
            emit(out, make_report(run, "validation", to_json(report)), validate_emit, color);
            return 0;
        }

        if (*overlap_cmd) {
            std::vector<RecordSet> sets;
            std::vector<std::string> names = split_trimmed(overlap_names, ',');
            auto files_json = ordered_json::array();
            for (std::size_t i = 0; i < overlap_files.size(); ++i) {
                std::string name = i < names.size() ? names[i] : std::string();
                LoadedSet loaded = load_record_set(overlap_files[i], name);
                print_diagnostics(err, overlap_files[i], loaded.diagnostics);
                sets.push_back(std::move(loaded.set));
                files_json.push_back(overlap_files[i]);
            }
            OverlapReport report = overlap(sets);
            run.inputs["sets"] = files_json;
            if (!overlap_out.empty()) {
                std::ostringstream os;
                csv::write_row(os, {"signature", "count"});
                for (const auto& r : report.regions)
                    csv::write_row(os, {r.signature, std::to_string(r.count)});
                write_file(overlap_out, os.str());
            }
            ordered_json payload = to_json(report);
            if (!overlap_out.empty()) payload["out"] = overlap_out;
            emit(out, make_report(run, "overlap", payload), overlap_emit, color);
            return 0;
        }

        if (*diagnose_cmd) {
            QGS qgs = load_qgs(diag_qgs);
            LoadedSet result = load_record_set(diag_result, "");
            LoadedSet corpus = load_record_set(diag_corpus, "");
            print_diagnostics(err, diag_result, result.diagnostics);
            print_diagnostics(err, diag_corpus, corpus.diagnostics);
            Query query = diag_query.load();
            SearchConfig cfg = diag_cfg.build();
            std::vector<std::string> generic = kDefaultGenericTerms;
            if (!diag_generic.empty()) generic = split_trimmed(diag_generic, ',');
            auto diagnoses =
                diagnose_misses(qgs, result.set, query, cfg, corpus.set, generic);
            run.inputs["qgs"] = diag_qgs;
            run.inputs["result"] = diag_result;
            run.inputs["corpus"] = diag_corpus;
            run.parameters["query"] = query.text();
            run.parameters["search_config"] = to_json(cfg);
            run.parameters["generic_terms"] = generic;
            ordered_json payload = to_json(diagnoses);
            if (!diag_tally_out.empty()) {
                std::ostringstream os;
                csv::write_row(os, {"cause", "count"});
                for (const auto& [label, count] : cause_tally(diagnoses))
                    csv::write_row(os, {label, std::to_string(count)});
                write_file(diag_tally_out, os.str());
                payload["tally_out"] = diag_tally_out;
            }
            emit(out, make_report(run, "diagnosis", payload), diag_emit, color);
            return 0;
        }

        if (*quality_cmd) {
            QGS qgs = load_qgs(quality_qgs);
            LoadedSet records = load_record_set(quality_records, "");
            print_diagnostics(err, quality_records, records.diagnostics);
            std::vector<std::pair<std::string, std::size_t>> refs;
            for (const auto& r : quality_refs) {
                auto eq = r.find('=');
                if (eq == std::string::npos)
                    throw DataError("bad --reference-size '" + r + "', expected LABEL=N");
                refs.emplace_back(r.substr(0, eq),
                                  static_cast<std::size_t>(std::stoul(r.substr(eq + 1))));
            }
            QgsQualityReport report = qgs_quality_report(qgs, records.set, refs);
            run.inputs["qgs"] = quality_qgs;
            run.inputs["records"] = quality_records;
            emit(out, make_report(run, "qgs_quality", to_json(report)), quality_emit, color);
            return 0;
        }

        if (*snowball_cmd) {
            LoadedSet corpus = load_record_set(sb_corpus, "");
            print_diagnostics(err, sb_corpus, corpus.diagnostics);
            std::set<std::string> seeds;
            if (to_lower_ascii(fs::path(sb_seeds).extension().string()) == ".json") {
                for (const auto& m : load_qgs(sb_seeds).members) seeds.insert(m.record_id);
            } else {
                std::istringstream lines(read_file(sb_seeds));
                std::string line;
                while (std::getline(lines, line)) {
                    std::string id = trim(line);
                    if (!id.empty() && id[0] != '#') seeds.insert(id);
                }
            }
            std::ifstream cit_in(sb_citations, std::ios::binary);
            if (!cit_in) throw DataError("cannot open file: " + sb_citations);
            CitationLoadResult citations = load_citations_csv(cit_in);
            print_diagnostics(err, sb_citations, citations.diagnostics);

            std::vector<std::string> unresolved;
            RecordSet result = forward_snowball(seeds, citations.table, corpus.set, &unresolved);
            run.inputs["seeds"] = sb_seeds;
            run.inputs["citations"] = sb_citations;
            run.inputs["corpus"] = sb_corpus;
            ordered_json payload;
            payload["seed_count"] = seeds.size();
            payload["edge_count"] = citations.table.size();
            payload["result_size"] = result.size();
            payload["unresolved_citing_ids"] = unresolved;
            if (!sb_out.empty()) {
                write_file(sb_out, canonical_csv_string(result));
                payload["out"] = sb_out;
            }
            if (!sb_qgs.empty()) {
                QGS qgs = load_qgs(sb_qgs);
                SnowballEvaluation eval =
                    evaluate_snowball(result, qgs, parse_threshold(sb_threshold), seeds);
                for (const auto& w : eval.warnings) err << "warning: " << w << "\n";
                payload["evaluation"] = to_json(eval);
                run.inputs["qgs"] = sb_qgs;
            }
            emit(out, make_report(run, "snowball", payload), sb_emit, color);
            return 0;
        }

        if (*simulate_cmd) {
            SimConfig config = sim_config_from_json_text(read_file(sim_config_path));
            if (sim_seed_given) config.seed = sim_seed_override;
            run.inputs["config"] = sim_config_path;
            run.parameters["seed"] = config.seed;
            SimCorpus corpus = generate(config);
            ordered_json payload;
            payload["n_papers"] = corpus.records.size();
            payload["n_relevant"] = corpus.ground_truth_relevant.size();
            if (!sim_out_corpus.empty()) {
                write_file(sim_out_corpus, canonical_csv_string(corpus.records));
                payload["out_corpus"] = sim_out_corpus;
            }
            if (!sim_out_truth.empty()) {
                std::string truth;
                for (const auto& id : corpus.ground_truth_relevant) truth += id + "\n";
                write_file(sim_out_truth, truth);
                payload["out_truth"] = sim_out_truth;
            }
            if (sim_experiment) {
                Query query = sim_query.load();
                SearchConfig cfg = sim_cfg.build();
                auto sampler = parse_qgs_sampler(sim_sampler).value_or(QgsSampler::Uniform);
                EstimatorReport report = estimator_experiment(
                    corpus, query, cfg, sampler, sim_qgs_size, sim_trials, sim_exp_seed);
                run.parameters["query"] = query.text();
                run.parameters["search_config"] = to_json(cfg);
                payload["experiment"] = to_json(report);
            }
            emit(out, make_report(run, "simulate", payload), sim_emit, color);
            return 0;
        }

        if (*cf_cmd) {
            LoadedSet corpus = load_record_set(cf_corpus, "");
            print_diagnostics(err, cf_corpus, corpus.diagnostics);
            QGS qgs = load_qgs(cf_qgs);
            Query query = cf_query.load();
            SearchConfig cfg = cf_cfg.build();
            QueryEdit edit = parse_edit(cf_edit);
            CounterfactualReport report = counterfactual_search(
                query, edit, corpus.set, cfg, qgs, parse_threshold(cf_threshold));
            run.inputs["corpus"] = cf_corpus;
            run.inputs["qgs"] = cf_qgs;
            run.parameters["query"] = query.text();
            run.parameters["search_config"] = to_json(cfg);
            run.parameters["edit"] = cf_edit;
            emit(out, make_report(run, "counterfactual", to_json(report)), cf_emit, color);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const QuerySyntaxError& e) {
        err << "query syntax error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace qg::cli
