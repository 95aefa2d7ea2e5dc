#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qg::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC 4180-ish reader: quoted cells, embedded quotes/commas/newlines,
/// CRLF line endings, optional UTF-8 BOM. First row is the header.
/// Short rows are padded to the header width; long rows are kept as-is.
Table read(std::istream& in);

void write_row(std::ostream& out, const std::vector<std::string>& cells);

void write(std::ostream& out, const Table& table);

}  // namespace qg::csv
