#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qg {

enum class DocType {
    JournalArticle,
    ConferencePaper,
    BookChapter,
    Report,
    Thesis,
    Other,
};

enum class StudyDesign {
    SystematicReview,
    SystematicMapping,
    InformalSurvey,
    PrimaryStudy,
    Unknown,
};

std::string to_string(DocType t);
std::string to_string(StudyDesign d);

/// Parses canonical tokens ("journal-article") plus common database
/// labels ("Article", "Conference Paper"). Unknown values map to Other.
DocType parse_doc_type(std::string_view s);

StudyDesign parse_study_design(std::string_view s);

/// One publication's metadata, canonicalized across source formats.
struct BibRecord {
    std::string record_id;
    std::string doi;       // empty = absent
    std::string title;     // non-empty after trimming
    std::string abstract;  // empty = absent
    std::vector<std::string> keywords;  // author keywords then index keywords, deduplicated
    std::vector<std::string> authors;   // order preserved
    std::optional<int> year;            // 1900..2100 when present
    std::string venue;
    std::string publisher;
    DocType doc_type = DocType::Other;
    std::optional<bool> peer_reviewed;
    std::set<std::string> subject_areas;
    std::set<std::string> source_databases;
    StudyDesign study_design = StudyDesign::Unknown;
    std::map<std::string, std::string> raw;  // original field name -> original value

    /// Count of populated optional fields; used to pick dedup survivors.
    int populated_field_count() const;
};

/// Equality over all canonical fields (raw mapping excluded).
bool operator==(const BibRecord& a, const BibRecord& b);

/// Equality over the fields the canonical CSV carries (raw and
/// peer_reviewed excluded); this is the round-trip identity.
bool canonical_fields_equal(const BibRecord& a, const BibRecord& b);

/// Lowercase, strip doi.org URL prefixes and a leading "doi:".
std::string normalize_doi(std::string_view doi);

/// Stable identifier. Priority: explicit id (canonical re-ingest), DOI,
/// database id, hash of normalized title + year. Deterministic.
std::string derive_record_id(const BibRecord& rec, std::string_view database_id,
                             std::string_view explicit_id);

/// In-place cleanup applied by every parser once fields are collected:
/// trims the title, replaces ";" inside list elements (the canonical CSV
/// list separator), drops empty list elements, and fills record_id.
/// Returns false when the record has no usable title.
bool finalize_record(BibRecord& rec, std::string_view database_id = {},
                     std::string_view explicit_id = {});

}  // namespace qg
