#pragma once

#include "quasigold/errors.hpp"
#include "quasigold/record.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qg {

struct ParseResult {
    std::vector<BibRecord> records;
    std::vector<Diagnostic> diagnostics;
};

/// BibTeX subset: @article/@inproceedings/@incollection map to doc types,
/// everything else to `other`. Field values get brace stripping and a
/// fixed LaTeX accent table; unknown commands are kept verbatim.
/// Malformed entries produce a diagnostic with a line number and parsing
/// continues with the next entry.
ParseResult parse_bibtex(std::istream& in);

/// RIS tag lines (TY/TI/AB/AU/KW/PY/DO/ER). Records without TI are
/// skipped with a diagnostic; stray lines outside TY..ER are ignored
/// with a diagnostic.
ParseResult parse_ris(std::istream& in);

/// Column-header mapping for CSV exports. Empty name = column unmapped.
/// Defaults match Scopus export headers.
struct CsvColumnMap {
    std::string title = "Title";
    std::string authors = "Authors";
    std::string year = "Year";
    std::string venue = "Source title";
    std::string abstract = "Abstract";
    std::string author_keywords = "Author Keywords";
    std::string index_keywords = "Index Keywords";
    std::string doi = "DOI";
    std::string database_id = "EID";
    std::string doc_type = "Document Type";
    std::string publisher = "Publisher";
    std::string subject_areas = "Subject Areas";  // not in every export; unmapped when absent
    std::string source_databases;
    std::string study_design;
    std::string record_id;
    /// Provenance tag applied to every parsed record when the input has
    /// no source column of its own.
    std::string source_database_value = "Scopus";

    static CsvColumnMap scopus() { return {}; }
    static CsvColumnMap canonical();
};

/// One record per data row. Throws ConfigError when the mapped title
/// column is missing from the header.
ParseResult parse_csv(std::istream& in, const CsvColumnMap& mapping = CsvColumnMap::scopus());

/// LaTeX value normalization used by the BibTeX parser; exposed for tests.
std::string latex_to_unicode(std::string_view value);

}  // namespace qg
