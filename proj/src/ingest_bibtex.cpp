#include "quasigold/ingest.hpp"
#include "quasigold/text.hpp"

#include <cctype>
#include <istream>
#include <map>
#include <sstream>

namespace qg {

namespace {

// Accent command + base letter -> composed character.
const std::map<std::string, const char*>& accent_table() {
    static const std::map<std::string, const char*> table = {
        {"'a", "á"}, {"'e", "é"}, {"'i", "í"}, {"'o", "ó"}, {"'u", "ú"}, {"'y", "ý"},
        {"'c", "ć"}, {"'n", "ń"}, {"'s", "ś"}, {"'z", "ź"},
        {"'A", "Á"}, {"'E", "É"}, {"'I", "Í"}, {"'O", "Ó"}, {"'U", "Ú"}, {"'Y", "Ý"},
        {"'C", "Ć"}, {"'N", "Ń"}, {"'S", "Ś"}, {"'Z", "Ź"},
        {"`a", "à"}, {"`e", "è"}, {"`i", "ì"}, {"`o", "ò"}, {"`u", "ù"},
        {"`A", "À"}, {"`E", "È"}, {"`I", "Ì"}, {"`O", "Ò"}, {"`U", "Ù"},
        {"^a", "â"}, {"^e", "ê"}, {"^i", "î"}, {"^o", "ô"}, {"^u", "û"},
        {"^A", "Â"}, {"^E", "Ê"}, {"^I", "Î"}, {"^O", "Ô"}, {"^U", "Û"},
        {"\"a", "ä"}, {"\"e", "ë"}, {"\"i", "ï"}, {"\"o", "ö"}, {"\"u", "ü"}, {"\"y", "ÿ"},
        {"\"A", "Ä"}, {"\"E", "Ë"}, {"\"I", "Ï"}, {"\"O", "Ö"}, {"\"U", "Ü"},
        {"~a", "ã"}, {"~o", "õ"}, {"~n", "ñ"}, {"~A", "Ã"}, {"~O", "Õ"}, {"~N", "Ñ"},
        {"cc", "ç"}, {"cC", "Ç"}, {"cs", "ş"}, {"cS", "Ş"}, {"ct", "ţ"},
        {"vc", "č"}, {"vC", "Č"}, {"vs", "š"}, {"vS", "Š"}, {"vz", "ž"}, {"vZ", "Ž"},
        {"vr", "ř"}, {"vR", "Ř"}, {"ve", "ě"}, {"vE", "Ě"}, {"vn", "ň"}, {"vN", "Ň"},
        {"=a", "ā"}, {"=e", "ē"}, {"=i", "ī"}, {"=o", "ō"}, {"=u", "ū"},
        {".z", "ż"}, {".Z", "Ż"}, {".e", "ė"},
        {"ua", "ă"}, {"uA", "Ă"}, {"ug", "ğ"}, {"uG", "Ğ"},
        {"Ho", "ő"}, {"HO", "Ő"}, {"Hu", "ű"}, {"HU", "Ű"},
        {"ka", "ą"}, {"kA", "Ą"}, {"ke", "ę"}, {"kE", "Ę"},
        {"ra", "å"}, {"rA", "Å"}, {"ru", "ů"}, {"rU", "Ů"},
    };
    return table;
}

const std::map<std::string, const char*>& word_command_table() {
    static const std::map<std::string, const char*> table = {
        {"aa", "å"}, {"AA", "Å"}, {"o", "ø"},  {"O", "Ø"},  {"ae", "æ"}, {"AE", "Æ"},
        {"oe", "œ"}, {"OE", "Œ"}, {"ss", "ß"}, {"l", "ł"},  {"L", "Ł"},  {"i", "i"},
        {"j", "j"},  {"&", "&"},  {"%", "%"},  {"_", "_"},  {"$", "$"},  {"#", "#"},
        {"{", "{"},  {"}", "}"},
    };
    return table;
}

bool is_accent_cmd(char c) {
    return c == '\'' || c == '`' || c == '^' || c == '"' || c == '~' || c == '=' || c == '.';
}

// Reads the accent base: a single char, possibly braced, possibly \i or \j.
std::string read_accent_base(std::string_view s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '{')) ++i;
    if (i >= s.size()) return {};
    std::string base;
    if (s[i] == '\\' && i + 1 < s.size() && (s[i + 1] == 'i' || s[i + 1] == 'j')) {
        base = std::string(1, s[i + 1]);
        i += 2;
    } else {
        base = std::string(1, s[i]);
        ++i;
    }
    while (i < s.size() && s[i] == '}') ++i;
    return base;
}

}  // namespace

std::string latex_to_unicode(std::string_view value) {
    std::string out;
    out.reserve(value.size());
    std::size_t i = 0;
    while (i < value.size()) {
        char c = value[i];
        if (c == '{' || c == '}') {
            ++i;
            continue;
        }
        if (c == '~') {  // unbreakable space
            out.push_back(' ');
            ++i;
            continue;
        }
        if (c != '\\') {
            out.push_back(c);
            ++i;
            continue;
        }
        // Command character(s) after the backslash.
        if (i + 1 >= value.size()) {
            out.push_back('\\');
            break;
        }
        char cmd = value[i + 1];
        if (is_accent_cmd(cmd)) {
            std::size_t j = i + 2;
            std::string base = read_accent_base(value, j);
            auto it = accent_table().find(std::string(1, cmd) + base);
            if (it != accent_table().end()) {
                out += it->second;
                i = j;
                continue;
            }
            out.push_back('\\');  // unknown combination stays verbatim
            out.push_back(cmd);
            i += 2;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(cmd))) {
            std::size_t j = i + 1;
            std::string name;
            while (j < value.size() && std::isalpha(static_cast<unsigned char>(value[j]))) {
                name.push_back(value[j]);
                ++j;
            }
            // Alphabetic accent commands take an argument: \c{c}, \v{s}, ...
            if (name.size() == 1 && std::string("cvuHkrbdt").find(name[0]) != std::string::npos) {
                std::size_t k = j;
                std::string base = read_accent_base(value, k);
                auto it = accent_table().find(name + base);
                if (it != accent_table().end()) {
                    out += it->second;
                    i = k;
                    continue;
                }
            }
            auto it = word_command_table().find(name);
            if (it != word_command_table().end()) {
                out += it->second;
                i = j;
                continue;
            }
            out.push_back('\\');  // unknown command stays verbatim
            out += name;
            i = j;
            continue;
        }
        // Escaped single character (\&, \%, \_, \$, \#) or line break.
        if (cmd == '\\') {
            out.push_back(' ');
        } else {
            auto it = word_command_table().find(std::string(1, cmd));
            if (it != word_command_table().end())
                out += it->second;
            else {
                out.push_back('\\');
                out.push_back(cmd);
            }
        }
        i += 2;
    }
    return collapse_whitespace(out);
}

namespace {

struct BibtexScanner {
    std::string text;
    std::size_t pos = 0;

    std::size_t line_at(std::size_t p) const {
        std::size_t line = 1;
        for (std::size_t i = 0; i < p && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        return line;
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() const { return pos >= text.size(); }

    // Recovery point after a malformed entry: the next '@' at line start
    // following the entry's own '@'. A value scan may already have run
    // past it, so restart from the entry head.
    std::size_t resync_after(std::size_t entry_at) const {
        std::size_t p = text.find("\n@", entry_at + 1);
        return p == std::string::npos ? text.size() : p + 1;
    }
};

// Reads a field value: {braced}, "quoted" or bare token. Returns false on
// unbalanced delimiters.
bool read_value(BibtexScanner& sc, std::string& out) {
    sc.skip_ws();
    if (sc.eof()) return false;
    char c = sc.text[sc.pos];
    if (c == '{') {
        int depth = 0;
        std::size_t start = ++sc.pos;
        while (sc.pos < sc.text.size()) {
            char ch = sc.text[sc.pos];
            if (ch == '\\' && sc.pos + 1 < sc.text.size()) {
                sc.pos += 2;
                continue;
            }
            if (ch == '{') ++depth;
            if (ch == '}') {
                if (depth == 0) {
                    out = sc.text.substr(start, sc.pos - start);
                    ++sc.pos;
                    return true;
                }
                --depth;
            }
            ++sc.pos;
        }
        return false;
    }
    if (c == '"') {
        std::size_t start = ++sc.pos;
        int depth = 0;
        while (sc.pos < sc.text.size()) {
            char ch = sc.text[sc.pos];
            if (ch == '\\' && sc.pos + 1 < sc.text.size()) {
                sc.pos += 2;
                continue;
            }
            if (ch == '{') ++depth;
            if (ch == '}' && depth > 0) --depth;
            if (ch == '"' && depth == 0) {
                out = sc.text.substr(start, sc.pos - start);
                ++sc.pos;
                return true;
            }
            ++sc.pos;
        }
        return false;
    }
    std::size_t start = sc.pos;
    while (sc.pos < sc.text.size() && !std::isspace(static_cast<unsigned char>(sc.text[sc.pos])) &&
           sc.text[sc.pos] != ',' && sc.text[sc.pos] != '}')
        ++sc.pos;
    out = sc.text.substr(start, sc.pos - start);
    return !out.empty();
}

DocType entry_doc_type(std::string_view type) {
    std::string t = to_lower_ascii(type);
    if (t == "article") return DocType::JournalArticle;
    if (t == "inproceedings" || t == "conference") return DocType::ConferencePaper;
    if (t == "incollection") return DocType::BookChapter;
    return DocType::Other;
}

std::vector<std::string> split_bibtex_authors(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    const std::string sep = " and ";
    std::string v = collapse_whitespace(value);
    while (true) {
        std::size_t p = v.find(sep, start);
        std::string piece = (p == std::string::npos) ? v.substr(start) : v.substr(start, p - start);
        piece = trim(piece);
        if (!piece.empty()) out.push_back(piece);
        if (p == std::string::npos) break;
        start = p + sep.size();
    }
    return out;
}

}  // namespace

ParseResult parse_bibtex(std::istream& in) {
    ParseResult result;
    BibtexScanner sc;
    {
        std::ostringstream buf;
        buf << in.rdbuf();
        sc.text = buf.str();
    }
    // Strip BOM.
    if (sc.text.rfind("\xEF\xBB\xBF", 0) == 0) sc.text.erase(0, 3);

    while (true) {
        std::size_t at = sc.text.find('@', sc.pos);
        if (at == std::string::npos) break;
        sc.pos = at + 1;
        std::size_t entry_line = sc.line_at(at);

        std::string type;
        while (!sc.eof() && (std::isalpha(static_cast<unsigned char>(sc.text[sc.pos])))) {
            type.push_back(sc.text[sc.pos]);
            ++sc.pos;
        }
        std::string ltype = to_lower_ascii(type);
        if (ltype == "comment" || ltype == "preamble" || ltype == "string") {
            if (ltype == "string")
                result.diagnostics.push_back(
                    {entry_line, "@string macros are not expanded; entry skipped"});
            continue;  // resynchronize at the next '@'
        }
        sc.skip_ws();
        if (sc.eof() || sc.text[sc.pos] != '{') {
            result.diagnostics.push_back({entry_line, "malformed entry: expected '{' after @" + type});
            sc.pos = sc.resync_after(at);
            continue;
        }
        ++sc.pos;

        // Citation key.
        sc.skip_ws();
        std::string key;
        while (!sc.eof() && sc.text[sc.pos] != ',' && sc.text[sc.pos] != '}' &&
               !std::isspace(static_cast<unsigned char>(sc.text[sc.pos]))) {
            key.push_back(sc.text[sc.pos]);
            ++sc.pos;
        }
        sc.skip_ws();
        if (!sc.eof() && sc.text[sc.pos] == ',') ++sc.pos;

        std::map<std::string, std::string> fields;
        bool ok = true;
        while (true) {
            sc.skip_ws();
            if (sc.eof()) {
                result.diagnostics.push_back(
                    {entry_line, "malformed entry '" + key + "': unbalanced braces"});
                ok = false;
                break;
            }
            if (sc.text[sc.pos] == '}') {
                ++sc.pos;
                break;
            }
            std::string fname;
            while (!sc.eof() && (std::isalnum(static_cast<unsigned char>(sc.text[sc.pos])) ||
                                 sc.text[sc.pos] == '-' || sc.text[sc.pos] == '_')) {
                fname.push_back(sc.text[sc.pos]);
                ++sc.pos;
            }
            sc.skip_ws();
            if (fname.empty() || sc.eof() || sc.text[sc.pos] != '=') {
                result.diagnostics.push_back(
                    {entry_line, "malformed entry '" + key + "': expected field = value"});
                ok = false;
                break;
            }
            ++sc.pos;
            std::string value;
            if (!read_value(sc, value)) {
                result.diagnostics.push_back(
                    {entry_line, "malformed entry '" + key + "': unbalanced value delimiter"});
                ok = false;
                break;
            }
            fields[to_lower_ascii(fname)] = value;
            sc.skip_ws();
            if (!sc.eof() && sc.text[sc.pos] == ',') ++sc.pos;
        }
        if (!ok) {
            sc.pos = sc.resync_after(at);
            continue;
        }

        BibRecord rec;
        rec.doc_type = entry_doc_type(type);
        for (const auto& [k, v] : fields) rec.raw[k] = v;
        if (auto it = fields.find("title"); it != fields.end())
            rec.title = latex_to_unicode(it->second);
        if (auto it = fields.find("abstract"); it != fields.end())
            rec.abstract = latex_to_unicode(it->second);
        if (auto it = fields.find("author"); it != fields.end())
            rec.authors = split_bibtex_authors(latex_to_unicode(it->second));
        if (auto it = fields.find("doi"); it != fields.end()) rec.doi = trim(it->second);
        if (auto it = fields.find("publisher"); it != fields.end())
            rec.publisher = latex_to_unicode(it->second);
        if (auto it = fields.find("journal"); it != fields.end())
            rec.venue = latex_to_unicode(it->second);
        else if (auto bt = fields.find("booktitle"); bt != fields.end())
            rec.venue = latex_to_unicode(bt->second);
        if (auto it = fields.find("keywords"); it != fields.end()) {
            std::string kw = latex_to_unicode(it->second);
            char sep = kw.find(';') != std::string::npos ? ';' : ',';
            rec.keywords = split_trimmed(kw, sep);
        }
        if (auto it = fields.find("year"); it != fields.end()) {
            try {
                int y = std::stoi(trim(it->second));
                if (y >= 1900 && y <= 2100)
                    rec.year = y;
                else
                    result.diagnostics.push_back(
                        {entry_line, "entry '" + key + "': year out of range, dropped"});
            } catch (const std::exception&) {
                result.diagnostics.push_back(
                    {entry_line, "entry '" + key + "': unparseable year"});
            }
        }
        if (!finalize_record(rec)) {
            result.diagnostics.push_back({entry_line, "entry '" + key + "' has no title; skipped"});
            continue;
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

}  // namespace qg
