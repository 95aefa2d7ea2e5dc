#pragma once

#include "quasigold/record.hpp"
#include "quasigold/search_config.hpp"

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qg {

/// A named, deduplicated-by-id set of records with search provenance.
/// Records are kept sorted by record_id; the set is immutable by
/// convention once built.
struct RecordSet {
    std::string name;
    std::vector<BibRecord> records;  // sorted by record_id, ids unique
    std::optional<SearchConfig> search_config;
    std::string created_date;  // ISO date, empty unless supplied

    std::size_t size() const { return records.size(); }
    bool contains(std::string_view id) const;
    const BibRecord* find(std::string_view id) const;
    std::set<std::string> ids() const;
};

/// Builds a RecordSet, merging records that collide on record_id:
/// union of keywords / subject_areas / source_databases, first
/// non-empty value wins elsewhere.
RecordSet make_record_set(std::string name, std::vector<BibRecord> records,
                          std::optional<SearchConfig> config = std::nullopt);

inline constexpr const char* kCanonicalCsvHeader =
    "record_id,doi,title,abstract,keywords,authors,year,venue,publisher,doc_type,"
    "subject_areas,source_databases,study_design";

void write_canonical_csv(std::ostream& out, const RecordSet& set);

std::string canonical_csv_string(const RecordSet& set);

}  // namespace qg
