#include "quasigold/record.hpp"

#include "quasigold/text.hpp"

#include <algorithm>

namespace qg {

std::string to_string(DocType t) {
    switch (t) {
        case DocType::JournalArticle: return "journal-article";
        case DocType::ConferencePaper: return "conference-paper";
        case DocType::BookChapter: return "book-chapter";
        case DocType::Report: return "report";
        case DocType::Thesis: return "thesis";
        case DocType::Other: return "other";
    }
    return "other";
}

std::string to_string(StudyDesign d) {
    switch (d) {
        case StudyDesign::SystematicReview: return "systematic-review";
        case StudyDesign::SystematicMapping: return "systematic-mapping";
        case StudyDesign::InformalSurvey: return "informal-survey";
        case StudyDesign::PrimaryStudy: return "primary-study";
        case StudyDesign::Unknown: return "unknown";
    }
    return "unknown";
}

DocType parse_doc_type(std::string_view s) {
    std::string v = to_lower_ascii(trim(s));
    if (v == "journal-article" || v == "article" || v == "review" || v == "journal article")
        return DocType::JournalArticle;
    if (v == "conference-paper" || v == "conference paper" || v == "proceedings paper")
        return DocType::ConferencePaper;
    if (v == "book-chapter" || v == "book chapter") return DocType::BookChapter;
    if (v == "report" || v == "technical report") return DocType::Report;
    if (v == "thesis" || v == "ph.d. thesis" || v == "doctoral thesis") return DocType::Thesis;
    return DocType::Other;
}

StudyDesign parse_study_design(std::string_view s) {
    std::string v = to_lower_ascii(trim(s));
    if (v == "systematic-review" || v == "systematic review") return StudyDesign::SystematicReview;
    if (v == "systematic-mapping" || v == "systematic mapping")
        return StudyDesign::SystematicMapping;
    if (v == "informal-survey" || v == "informal survey" || v == "survey")
        return StudyDesign::InformalSurvey;
    if (v == "primary-study" || v == "primary study") return StudyDesign::PrimaryStudy;
    return StudyDesign::Unknown;
}

int BibRecord::populated_field_count() const {
    int n = 0;
    n += !doi.empty();
    n += !abstract.empty();
    n += !keywords.empty();
    n += !authors.empty();
    n += year.has_value();
    n += !venue.empty();
    n += !publisher.empty();
    n += doc_type != DocType::Other;
    n += peer_reviewed.has_value();
    n += !subject_areas.empty();
    n += study_design != StudyDesign::Unknown;
    return n;
}

bool canonical_fields_equal(const BibRecord& a, const BibRecord& b) {
    return a.record_id == b.record_id && a.doi == b.doi && a.title == b.title &&
           a.abstract == b.abstract && a.keywords == b.keywords && a.authors == b.authors &&
           a.year == b.year && a.venue == b.venue && a.publisher == b.publisher &&
           a.doc_type == b.doc_type && a.subject_areas == b.subject_areas &&
           a.source_databases == b.source_databases && a.study_design == b.study_design;
}

bool operator==(const BibRecord& a, const BibRecord& b) {
    return canonical_fields_equal(a, b) && a.peer_reviewed == b.peer_reviewed;
}

std::string normalize_doi(std::string_view doi) {
    std::string v = to_lower_ascii(trim(doi));
    for (std::string_view prefix :
         {"https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/",
          "doi:"}) {
        if (v.rfind(prefix, 0) == 0) {
            v = v.substr(prefix.size());
            break;
        }
    }
    return v;
}

std::string derive_record_id(const BibRecord& rec, std::string_view database_id,
                             std::string_view explicit_id) {
    std::string ex = trim(explicit_id);
    if (!ex.empty()) return ex;
    std::string doi = normalize_doi(rec.doi);
    if (!doi.empty()) return "doi:" + doi;
    std::string db = trim(database_id);
    if (!db.empty()) return "db:" + db;
    std::string key = normalize_title(rec.title);
    key += '|';
    if (rec.year) key += std::to_string(*rec.year);
    return "ti:" + fnv1a64_hex(key);
}

namespace {

void sanitize_list(std::vector<std::string>& items) {
    std::vector<std::string> out;
    out.reserve(items.size());
    for (std::string& item : items) {
        std::replace(item.begin(), item.end(), ';', ',');
        std::string t = collapse_whitespace(item);
        if (t.empty()) continue;
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
    }
    items = std::move(out);
}

void sanitize_set(std::set<std::string>& items) {
    std::set<std::string> out;
    for (const std::string& item : items) {
        std::string t = collapse_whitespace(item);
        std::replace(t.begin(), t.end(), ';', ',');
        if (!t.empty()) out.insert(std::move(t));
    }
    items = std::move(out);
}

}  // namespace

bool finalize_record(BibRecord& rec, std::string_view database_id, std::string_view explicit_id) {
    rec.title = collapse_whitespace(rec.title);
    if (rec.title.empty()) return false;
    rec.doi = normalize_doi(rec.doi);
    sanitize_list(rec.keywords);
    sanitize_list(rec.authors);
    sanitize_set(rec.subject_areas);
    sanitize_set(rec.source_databases);
    if (rec.year && (*rec.year < 1900 || *rec.year > 2100)) rec.year.reset();
    rec.record_id = derive_record_id(rec, database_id, explicit_id);
    return true;
}

}  // namespace qg
