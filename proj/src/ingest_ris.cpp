#include "quasigold/ingest.hpp"
#include "quasigold/text.hpp"

#include <cctype>
#include <istream>

namespace qg {

namespace {

DocType ris_doc_type(std::string_view ty) {
    std::string t = to_lower_ascii(trim(ty));
    if (t == "jour") return DocType::JournalArticle;
    if (t == "conf" || t == "cpaper") return DocType::ConferencePaper;
    if (t == "chap") return DocType::BookChapter;
    if (t == "rprt") return DocType::Report;
    if (t == "thes") return DocType::Thesis;
    return DocType::Other;
}

std::optional<int> leading_year(std::string_view value) {
    std::string v = trim(value);
    if (v.size() < 4) return std::nullopt;
    for (int i = 0; i < 4; ++i)
        if (!std::isdigit(static_cast<unsigned char>(v[static_cast<std::size_t>(i)])))
            return std::nullopt;
    int y = std::stoi(v.substr(0, 4));
    if (y < 1900 || y > 2100) return std::nullopt;
    return y;
}

// "XX  - value" with a two-character tag.
bool split_tag_line(const std::string& line, std::string& tag, std::string& value) {
    if (line.size() < 5) return false;
    if (!std::isupper(static_cast<unsigned char>(line[0])) ||
        !(std::isupper(static_cast<unsigned char>(line[1])) ||
          std::isdigit(static_cast<unsigned char>(line[1]))))
        return false;
    if (line[2] != ' ' || line[3] != ' ' || line[4] != '-') return false;
    tag = line.substr(0, 2);
    value = line.size() > 5 ? trim(std::string_view(line).substr(5)) : std::string();
    return true;
}

}  // namespace

ParseResult parse_ris(std::istream& in) {
    ParseResult result;
    bool in_record = false;
    BibRecord rec;
    std::size_t record_line = 0;
    std::size_t line_no = 0;
    std::string* last_value = nullptr;  // continuation target inside a record

    auto finish_record = [&]() {
        if (trim(rec.title).empty()) {
            result.diagnostics.push_back({record_line, "RIS record without TI tag; skipped"});
        } else if (finalize_record(rec)) {
            result.records.push_back(std::move(rec));
        }
        rec = BibRecord{};
        in_record = false;
        last_value = nullptr;
    };

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;

        std::string tag, value;
        if (!split_tag_line(line, tag, value)) {
            if (in_record && last_value) {
                *last_value += " " + trim(line);  // wrapped long value
            } else {
                result.diagnostics.push_back({line_no, "stray line outside TY..ER; ignored"});
            }
            continue;
        }

        if (tag == "TY") {
            if (in_record) {
                result.diagnostics.push_back(
                    {line_no, "TY before ER; previous record closed implicitly"});
                finish_record();
            }
            in_record = true;
            record_line = line_no;
            rec.doc_type = ris_doc_type(value);
            rec.raw["TY"] = value;
            last_value = nullptr;
            continue;
        }
        if (!in_record) {
            result.diagnostics.push_back({line_no, "stray line outside TY..ER; ignored"});
            continue;
        }
        if (tag == "ER") {
            finish_record();
            continue;
        }

        rec.raw.emplace(tag, value);
        last_value = nullptr;
        if (tag == "TI" || tag == "T1") {
            rec.title = value;
            last_value = &rec.title;
        } else if (tag == "AB" || tag == "N2") {
            rec.abstract = value;
            last_value = &rec.abstract;
        } else if (tag == "AU" || tag == "A1") {
            rec.authors.push_back(value);
            last_value = &rec.authors.back();
        } else if (tag == "KW") {
            rec.keywords.push_back(value);
            last_value = &rec.keywords.back();
        } else if (tag == "PY" || tag == "Y1") {
            auto y = leading_year(value);
            if (y)
                rec.year = y;
            else
                result.diagnostics.push_back({line_no, "PY without a leading 4-digit year"});
        } else if (tag == "DO") {
            rec.doi = value;
        } else if (tag == "T2" || tag == "JO" || tag == "JF") {
            if (rec.venue.empty()) rec.venue = value;
        } else if (tag == "PB") {
            rec.publisher = value;
        }
    }
    if (in_record) {
        result.diagnostics.push_back({record_line, "record not terminated by ER"});
        finish_record();
    }
    return result;
}

}  // namespace qg
