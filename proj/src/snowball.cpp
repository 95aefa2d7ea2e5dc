#include "quasigold/snowball.hpp"

#include "quasigold/csv.hpp"
#include "quasigold/text.hpp"

#include <algorithm>
#include <istream>

namespace qg {

void CitationTable::add(std::string citing, std::string cited) {
    if (citing == cited) return;
    edges.emplace(std::move(citing), std::move(cited));
}

CitationLoadResult load_citations_csv(std::istream& in) {
    CitationLoadResult out;
    csv::Table table = csv::read(in);
    if (table.header.size() < 2 || !ascii_iequals(trim(table.header[0]), "citing_id") ||
        !ascii_iequals(trim(table.header[1]), "cited_id"))
        throw DataError("citations CSV must start with header 'citing_id,cited_id'");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = r + 2;
        std::string citing = trim(row[0]);
        std::string cited = row.size() > 1 ? trim(row[1]) : std::string();
        if (citing.empty() || cited.empty()) {
            out.diagnostics.push_back({line, "row with empty id; skipped"});
            continue;
        }
        if (citing == cited) {
            out.diagnostics.push_back({line, "self-citation '" + citing + "'; skipped"});
            continue;
        }
        out.table.edges.emplace(std::move(citing), std::move(cited));
    }
    return out;
}

RecordSet forward_snowball(const std::set<std::string>& seeds, const CitationTable& citations,
                           const RecordSet& corpus, std::vector<std::string>* unresolved_citing) {
    for (const auto& seed : seeds) {
        if (!corpus.contains(seed)) throw DataError("unknown seed id: " + seed);
    }
    std::set<std::string> citing_ids;
    for (const auto& [citing, cited] : citations.edges) {
        if (seeds.count(cited)) citing_ids.insert(citing);
    }
    std::vector<BibRecord> records;
    for (const auto& id : citing_ids) {
        if (seeds.count(id)) continue;
        const BibRecord* rec = corpus.find(id);
        if (!rec) {
            if (unresolved_citing) unresolved_citing->push_back(id);
            continue;
        }
        records.push_back(*rec);
    }
    return make_record_set("forward-snowball", std::move(records));
}

SnowballEvaluation evaluate_snowball(const RecordSet& snowball_result, const QGS& qgs,
                                     RecallThreshold threshold,
                                     const std::set<std::string>& seeds) {
    SnowballEvaluation eval;
    eval.report = validate_search(qgs, snowball_result, threshold);
    if (!seeds.empty()) {
        std::vector<std::string> shared;
        for (const auto& m : qgs.members)
            if (seeds.count(m.record_id)) shared.push_back(m.record_id);
        if (!shared.empty()) {
            eval.warnings.push_back(
                "seeds and QGS share " + std::to_string(shared.size()) +
                " record(s); recall against the snowball's own seed set is circular and not a "
                "useful completeness check");
        }
    }
    return eval;
}

}  // namespace qg
