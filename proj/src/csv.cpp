#include "quasigold/csv.hpp"

#include <istream>
#include <ostream>

namespace qg::csv {

namespace {

// Reads one logical record (quotes may span physical lines).
// Returns false at end of input with nothing consumed.
bool read_record(std::istream& in, std::vector<std::string>& cells) {
    cells.clear();
    std::string cell;
    bool in_quotes = false;
    bool any = false;
    int ch;
    while ((ch = in.get()) != std::char_traits<char>::eof()) {
        any = true;
        char c = static_cast<char>(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    cell.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                cell.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            cells.push_back(std::move(cell));
            return true;
        } else if (c == '\n') {
            cells.push_back(std::move(cell));
            return true;
        } else {
            cell.push_back(c);
        }
    }
    if (!any) return false;
    cells.push_back(std::move(cell));
    return true;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

}  // namespace

Table read(std::istream& in) {
    Table t;
    // Strip UTF-8 BOM if present.
    if (in.peek() == 0xEF) {
        char bom[3];
        in.read(bom, 3);
        if (in.gcount() != 3 || bom[1] != static_cast<char>(0xBB) ||
            bom[2] != static_cast<char>(0xBF)) {
            for (std::streamsize i = in.gcount(); i > 0; --i) in.unget();
        }
    }
    std::vector<std::string> cells;
    if (!read_record(in, cells)) return t;
    t.header = cells;
    while (read_record(in, cells)) {
        if (cells.size() == 1 && cells[0].empty()) continue;  // blank line
        while (cells.size() < t.header.size()) cells.emplace_back();
        t.rows.push_back(cells);
    }
    return t;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        const std::string& s = cells[i];
        if (needs_quoting(s)) {
            out << '"';
            for (char c : s) {
                if (c == '"') out << '"';
                out << c;
            }
            out << '"';
        } else {
            out << s;
        }
    }
    out << '\n';
}

void write(std::ostream& out, const Table& table) {
    write_row(out, table.header);
    for (const auto& row : table.rows) write_row(out, row);
}

}  // namespace qg::csv
