#include "quasigold/query.hpp"
#include "quasigold/text.hpp"

#include <cctype>

namespace qg {

std::unique_ptr<QueryNode> QueryNode::clone() const {
    auto node = std::make_unique<QueryNode>();
    node->kind = kind;
    node->phrase = phrase;
    node->phrase_tokens = phrase_tokens;
    node->phrase_index = phrase_index;
    node->scope = scope;
    node->children.reserve(children.size());
    for (const auto& child : children) node->children.push_back(child->clone());
    return node;
}

Query& Query::operator=(const Query& other) {
    if (this == &other) return *this;
    root_ = other.root_ ? other.root_->clone() : nullptr;
    text_ = other.text_;
    reindex();
    return *this;
}

void Query::reset_root(std::unique_ptr<QueryNode> root) {
    root_ = std::move(root);
    reindex();
}

namespace {

void collect_phrases(QueryNode* node, std::vector<const QueryNode*>& out) {
    if (!node) return;
    if (node->kind == QueryNode::Kind::Phrase) {
        node->phrase_index = static_cast<int>(out.size());
        out.push_back(node);
        return;
    }
    for (auto& child : node->children) collect_phrases(child.get(), out);
}

}  // namespace

void Query::reindex() {
    phrases_.clear();
    collect_phrases(root_.get(), phrases_);
}

namespace {

enum class TokKind { Phrase, And, Or, Not, LParen, RParen, Scope, End };

struct Token {
    TokKind kind;
    std::string value;      // phrase text or scope name
    std::size_t offset = 0; // character offset into the query string
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '(') {
            out.push_back({TokKind::LParen, "(", i});
            ++i;
            continue;
        }
        if (c == ')') {
            out.push_back({TokKind::RParen, ")", i});
            ++i;
            continue;
        }
        if (c == '"') {
            std::size_t start = i;
            std::size_t close = text.find('"', i + 1);
            if (close == std::string::npos)
                throw QuerySyntaxError("unbalanced quote", start);
            out.push_back({TokKind::Phrase, text.substr(i + 1, close - i - 1), start});
            i = close + 1;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '-') {
            std::size_t start = i;
            std::string word;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '-')) {
                word.push_back(text[i]);
                ++i;
            }
            bool has_colon = i < text.size() && text[i] == ':';
            if (has_colon && (ascii_iequals(word, "TITLE") || ascii_iequals(word, "TITLE-ABS-KEY"))) {
                out.push_back({TokKind::Scope, to_lower_ascii(word), start});
                ++i;  // consume ':'
                continue;
            }
            if (ascii_iequals(word, "AND")) {
                out.push_back({TokKind::And, word, start});
                continue;
            }
            if (ascii_iequals(word, "OR")) {
                out.push_back({TokKind::Or, word, start});
                continue;
            }
            if (ascii_iequals(word, "NOT")) {
                out.push_back({TokKind::Not, word, start});
                continue;
            }
            throw QuerySyntaxError("bare word '" + word + "'; search terms must be quoted phrases",
                                   start);
        }
        throw QuerySyntaxError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({TokKind::End, "", text.size()});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(lex(text)) {}

    std::unique_ptr<QueryNode> parse() {
        auto node = parse_or();
        if (cur().kind != TokKind::End)
            throw QuerySyntaxError("unexpected trailing input", cur().offset);
        return node;
    }

private:
    const Token& cur() const { return tokens_[pos_]; }
    void advance() { ++pos_; }

    std::unique_ptr<QueryNode> parse_or() {
        auto left = parse_and();
        if (cur().kind != TokKind::Or) return left;
        auto node = std::make_unique<QueryNode>();
        node->kind = QueryNode::Kind::Or;
        node->children.push_back(std::move(left));
        while (cur().kind == TokKind::Or) {
            advance();
            node->children.push_back(parse_and());
        }
        return node;
    }

    std::unique_ptr<QueryNode> parse_and() {
        auto left = parse_unary();
        if (cur().kind != TokKind::And) return left;
        auto node = std::make_unique<QueryNode>();
        node->kind = QueryNode::Kind::And;
        node->children.push_back(std::move(left));
        while (cur().kind == TokKind::And) {
            advance();
            node->children.push_back(parse_unary());
        }
        return node;
    }

    std::unique_ptr<QueryNode> parse_unary() {
        if (cur().kind == TokKind::Not) {
            advance();
            auto node = std::make_unique<QueryNode>();
            node->kind = QueryNode::Kind::Not;
            node->children.push_back(parse_unary());
            return node;
        }
        return parse_primary();
    }

    std::unique_ptr<QueryNode> parse_primary() {
        const Token& t = cur();
        switch (t.kind) {
            case TokKind::Phrase: {
                auto node = std::make_unique<QueryNode>();
                node->kind = QueryNode::Kind::Phrase;
                node->phrase = trim(t.value);
                node->phrase_tokens = tokenize(node->phrase);
                if (node->phrase_tokens.empty())
                    throw QuerySyntaxError("empty phrase", t.offset);
                advance();
                return node;
            }
            case TokKind::LParen: {
                advance();
                auto node = parse_or();
                if (cur().kind != TokKind::RParen)
                    throw QuerySyntaxError("unbalanced parenthesis", cur().offset);
                advance();
                return node;
            }
            case TokKind::Scope: {
                auto node = std::make_unique<QueryNode>();
                node->kind = QueryNode::Kind::Scoped;
                node->scope = t.value == "title" ? FieldScope::Title : FieldScope::TitleAbsKey;
                advance();
                if (cur().kind != TokKind::LParen && cur().kind != TokKind::Phrase)
                    throw QuerySyntaxError("scope marker must be followed by a group or phrase",
                                           cur().offset);
                node->children.push_back(parse_primary());
                return node;
            }
            case TokKind::End:
                throw QuerySyntaxError("dangling operator: expected phrase or '('", t.offset);
            default:
                throw QuerySyntaxError("expected phrase or '('", t.offset);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

int precedence(QueryNode::Kind kind) {
    switch (kind) {
        case QueryNode::Kind::Or: return 1;
        case QueryNode::Kind::And: return 2;
        case QueryNode::Kind::Not: return 3;
        default: return 4;
    }
}

void render(const QueryNode* node, std::string& out, int parent_prec) {
    if (!node) return;
    switch (node->kind) {
        case QueryNode::Kind::Phrase:
            out += '"';
            out += node->phrase;
            out += '"';
            return;
        case QueryNode::Kind::Scoped:
            out += node->scope == FieldScope::Title ? "TITLE: " : "TITLE-ABS-KEY: ";
            if (node->children[0]->kind == QueryNode::Kind::Phrase) {
                render(node->children[0].get(), out, 4);
            } else {
                out += '(';
                render(node->children[0].get(), out, 0);
                out += ')';
            }
            return;
        case QueryNode::Kind::Not:
            out += "NOT ";
            render(node->children[0].get(), out, precedence(QueryNode::Kind::Not));
            return;
        default: break;
    }
    const int prec = precedence(node->kind);
    const char* sep = node->kind == QueryNode::Kind::And ? " AND " : " OR ";
    bool parens = prec < parent_prec;
    if (parens) out += '(';
    for (std::size_t i = 0; i < node->children.size(); ++i) {
        if (i) out += sep;
        render(node->children[i].get(), out, prec);
    }
    if (parens) out += ')';
}

}  // namespace

Query parse_query(const std::string& text) {
    Parser parser(text);
    Query q;
    q.set_text(text);
    q.reset_root(parser.parse());
    return q;
}

std::string Query::to_string() const {
    std::string out;
    render(root_.get(), out, 0);
    return out;
}

std::vector<const QueryNode*> top_level_conjuncts(const Query& query) {
    const QueryNode* node = query.root();
    while (node && node->kind == QueryNode::Kind::Scoped) node = node->children[0].get();
    std::vector<const QueryNode*> out;
    if (!node) return out;
    if (node->kind == QueryNode::Kind::And) {
        for (const auto& child : node->children) out.push_back(child.get());
    } else {
        out.push_back(node);
    }
    return out;
}

std::string conjunct_label(std::size_t index) {
    std::string label;
    do {
        label.insert(label.begin(), static_cast<char>('A' + index % 26));
        index = index / 26;
    } while (index-- > 0);
    return label;
}

std::vector<std::string> phrases_in_subtree(const QueryNode* node) {
    std::vector<std::string> out;
    if (!node) return out;
    if (node->kind == QueryNode::Kind::Phrase) {
        out.push_back(node->phrase);
        return out;
    }
    for (const auto& child : node->children) {
        auto sub = phrases_in_subtree(child.get());
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

}  // namespace qg
