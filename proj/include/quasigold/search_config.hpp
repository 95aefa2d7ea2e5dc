#pragma once

#include "quasigold/record.hpp"

#include <optional>
#include <set>
#include <string>

namespace qg {

enum class FieldScope {
    Title,
    TitleAbsKey,
};

std::string to_string(FieldScope s);
std::optional<FieldScope> parse_field_scope(std::string_view s);

/// Search cutoff. Month is recorded for provenance but matching is by
/// year only: exported metadata rarely carries months.
struct CutoffDate {
    int year = 0;
    std::optional<int> month;
};

struct YearRange {
    int min = 0;
    int max = 0;
};

/// How records with empty subject_areas behave under a subject filter.
/// Lenient (default) passes them: unlabeled is not evidence of exclusion.
enum class EmptySubjectPolicy {
    Lenient,
    Strict,
};

struct SearchConfig {
    std::set<std::string> sources;
    FieldScope field_scope = FieldScope::TitleAbsKey;
    std::optional<std::set<std::string>> subject_area_filter;
    std::optional<std::set<DocType>> doc_type_filter;
    std::optional<CutoffDate> cutoff_date;
    std::optional<YearRange> year_range;  // min <= max
    bool require_systematic = false;
    EmptySubjectPolicy empty_subject_policy = EmptySubjectPolicy::Lenient;
};

}  // namespace qg
