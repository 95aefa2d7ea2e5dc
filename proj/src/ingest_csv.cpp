#include "quasigold/csv.hpp"
#include "quasigold/ingest.hpp"
#include "quasigold/text.hpp"

#include <algorithm>
#include <istream>

namespace qg {

CsvColumnMap CsvColumnMap::canonical() {
    CsvColumnMap m;
    m.title = "title";
    m.authors = "authors";
    m.year = "year";
    m.venue = "venue";
    m.abstract = "abstract";
    m.author_keywords = "keywords";
    m.index_keywords = "";
    m.doi = "doi";
    m.database_id = "";
    m.doc_type = "doc_type";
    m.publisher = "publisher";
    m.subject_areas = "subject_areas";
    m.source_databases = "source_databases";
    m.study_design = "study_design";
    m.record_id = "record_id";
    m.source_database_value = "";
    return m;
}

namespace {

int find_column(const std::vector<std::string>& header, const std::string& name) {
    if (name.empty()) return -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (ascii_iequals(trim(header[i]), name)) return static_cast<int>(i);
    }
    return -1;
}

std::string cell(const std::vector<std::string>& row, int idx) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= row.size()) return {};
    return trim(row[static_cast<std::size_t>(idx)]);
}

}  // namespace

ParseResult parse_csv(std::istream& in, const CsvColumnMap& mapping) {
    csv::Table table = csv::read(in);
    if (table.header.empty())
        return {};  // empty input, no error

    const int col_title = find_column(table.header, mapping.title);
    if (col_title < 0)
        throw ConfigError("CSV mapping error: title column '" + mapping.title +
                          "' not found in header");
    const int col_authors = find_column(table.header, mapping.authors);
    const int col_year = find_column(table.header, mapping.year);
    const int col_venue = find_column(table.header, mapping.venue);
    const int col_abstract = find_column(table.header, mapping.abstract);
    const int col_akw = find_column(table.header, mapping.author_keywords);
    const int col_ikw = find_column(table.header, mapping.index_keywords);
    const int col_doi = find_column(table.header, mapping.doi);
    const int col_dbid = find_column(table.header, mapping.database_id);
    const int col_doctype = find_column(table.header, mapping.doc_type);
    const int col_publisher = find_column(table.header, mapping.publisher);
    const int col_subjects = find_column(table.header, mapping.subject_areas);
    const int col_sources = find_column(table.header, mapping.source_databases);
    const int col_design = find_column(table.header, mapping.study_design);
    const int col_record_id = find_column(table.header, mapping.record_id);

    ParseResult result;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = r + 2;  // 1-based, after header
        BibRecord rec;
        rec.title = cell(row, col_title);
        if (rec.title.empty()) {
            result.diagnostics.push_back({line, "row without title; skipped"});
            continue;
        }
        rec.abstract = cell(row, col_abstract);
        rec.doi = cell(row, col_doi);
        rec.venue = cell(row, col_venue);
        rec.publisher = cell(row, col_publisher);
        if (col_doctype >= 0) rec.doc_type = parse_doc_type(cell(row, col_doctype));
        if (col_design >= 0) rec.study_design = parse_study_design(cell(row, col_design));

        std::string authors = cell(row, col_authors);
        if (!authors.empty()) {
            char sep = authors.find(';') != std::string::npos ? ';' : ',';
            rec.authors = split_trimmed(authors, sep);
        }
        for (int col : {col_akw, col_ikw}) {
            for (auto& kw : split_trimmed(cell(row, col), ';')) {
                if (std::find(rec.keywords.begin(), rec.keywords.end(), kw) == rec.keywords.end())
                    rec.keywords.push_back(std::move(kw));
            }
        }
        for (auto& s : split_trimmed(cell(row, col_subjects), ';')) rec.subject_areas.insert(s);
        for (auto& s : split_trimmed(cell(row, col_sources), ';')) rec.source_databases.insert(s);
        if (rec.source_databases.empty() && !mapping.source_database_value.empty())
            rec.source_databases.insert(mapping.source_database_value);

        std::string year = cell(row, col_year);
        if (!year.empty()) {
            bool numeric = !year.empty() &&
                           std::all_of(year.begin(), year.end(), [](unsigned char c) {
                               return std::isdigit(c);
                           });
            int y = numeric ? std::stoi(year) : 0;
            if (numeric && y >= 1900 && y <= 2100)
                rec.year = y;
            else
                result.diagnostics.push_back({line, "unparseable year '" + year + "'"});
        }

        for (std::size_t c = 0; c < table.header.size() && c < row.size(); ++c) {
            if (!trim(row[c]).empty()) rec.raw[trim(table.header[c])] = row[c];
        }

        if (!finalize_record(rec, cell(row, col_dbid), cell(row, col_record_id))) {
            result.diagnostics.push_back({line, "row without title; skipped"});
            continue;
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

}  // namespace qg
