#include "quasigold/record_set.hpp"

#include "quasigold/csv.hpp"
#include "quasigold/text.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

namespace qg {

std::string to_string(FieldScope s) {
    return s == FieldScope::Title ? "title" : "title-abs-key";
}

std::optional<FieldScope> parse_field_scope(std::string_view s) {
    std::string v = to_lower_ascii(trim(s));
    if (v == "title") return FieldScope::Title;
    if (v == "title-abs-key" || v == "titleabskey" || v == "tak") return FieldScope::TitleAbsKey;
    return std::nullopt;
}

bool RecordSet::contains(std::string_view id) const {
    return find(id) != nullptr;
}

const BibRecord* RecordSet::find(std::string_view id) const {
    auto it = std::lower_bound(records.begin(), records.end(), id,
                               [](const BibRecord& r, std::string_view v) { return r.record_id < v; });
    if (it != records.end() && it->record_id == id) return &*it;
    return nullptr;
}

std::set<std::string> RecordSet::ids() const {
    std::set<std::string> out;
    for (const auto& r : records) out.insert(r.record_id);
    return out;
}

namespace {

void merge_into(BibRecord& dst, const BibRecord& src) {
    if (dst.doi.empty()) dst.doi = src.doi;
    if (dst.abstract.empty()) dst.abstract = src.abstract;
    if (dst.authors.empty()) dst.authors = src.authors;
    if (!dst.year) dst.year = src.year;
    if (dst.venue.empty()) dst.venue = src.venue;
    if (dst.publisher.empty()) dst.publisher = src.publisher;
    if (dst.doc_type == DocType::Other) dst.doc_type = src.doc_type;
    if (!dst.peer_reviewed) dst.peer_reviewed = src.peer_reviewed;
    if (dst.study_design == StudyDesign::Unknown) dst.study_design = src.study_design;
    for (const auto& kw : src.keywords) {
        if (std::find(dst.keywords.begin(), dst.keywords.end(), kw) == dst.keywords.end())
            dst.keywords.push_back(kw);
    }
    dst.subject_areas.insert(src.subject_areas.begin(), src.subject_areas.end());
    dst.source_databases.insert(src.source_databases.begin(), src.source_databases.end());
    for (const auto& [k, v] : src.raw) dst.raw.emplace(k, v);
}

}  // namespace

RecordSet make_record_set(std::string name, std::vector<BibRecord> records,
                          std::optional<SearchConfig> config) {
    RecordSet set;
    set.name = std::move(name);
    set.search_config = std::move(config);
    std::map<std::string, std::size_t> index;
    for (BibRecord& rec : records) {
        auto [it, inserted] = index.emplace(rec.record_id, set.records.size());
        if (inserted) {
            set.records.push_back(std::move(rec));
        } else {
            merge_into(set.records[it->second], rec);
        }
    }
    std::sort(set.records.begin(), set.records.end(),
              [](const BibRecord& a, const BibRecord& b) { return a.record_id < b.record_id; });
    return set;
}

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string join(const std::set<std::string>& items, const char* sep) {
    std::string out;
    bool first = true;
    for (const auto& item : items) {
        if (!first) out += sep;
        out += item;
        first = false;
    }
    return out;
}

}  // namespace

void write_canonical_csv(std::ostream& out, const RecordSet& set) {
    csv::Table t;
    t.header = split_trimmed(kCanonicalCsvHeader, ',');
    for (const BibRecord& r : set.records) {
        t.rows.push_back({r.record_id, r.doi, r.title, r.abstract, join(r.keywords, ";"),
                          join(r.authors, ";"), r.year ? std::to_string(*r.year) : "", r.venue,
                          r.publisher, to_string(r.doc_type), join(r.subject_areas, ";"),
                          join(r.source_databases, ";"), to_string(r.study_design)});
    }
    csv::write(out, t);
}

std::string canonical_csv_string(const RecordSet& set) {
    std::ostringstream os;
    write_canonical_csv(os, set);
    return os.str();
}

}  // namespace qg
