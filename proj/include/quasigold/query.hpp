#pragma once

#include "quasigold/errors.hpp"
#include "quasigold/record_set.hpp"
#include "quasigold/search_config.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qg {

/// Boolean search-string AST. Phrases are the atoms; matching is an
/// exact contiguous token-sequence match (no stemming: "testing" does
/// not match "test", mirroring how inconsistently real engines
/// lemmatize).
struct QueryNode {
    enum class Kind { Phrase, And, Or, Not, Scoped };

    Kind kind = Kind::Phrase;
    std::string phrase;                     // Kind::Phrase
    std::vector<std::string> phrase_tokens; // folded tokens, non-empty
    int phrase_index = -1;                  // position in Query::phrases
    FieldScope scope = FieldScope::TitleAbsKey;  // Kind::Scoped
    std::vector<std::unique_ptr<QueryNode>> children;

    std::unique_ptr<QueryNode> clone() const;
};

class Query {
public:
    Query() = default;
    Query(const Query& other) { *this = other; }
    Query& operator=(const Query& other);
    Query(Query&&) = default;
    Query& operator=(Query&&) = default;

    const QueryNode* root() const { return root_.get(); }
    QueryNode* mutable_root() { return root_.get(); }
    void reset_root(std::unique_ptr<QueryNode> root);

    const std::string& text() const { return text_; }
    void set_text(std::string text) { text_ = std::move(text); }

    /// All Phrase nodes in parse order; index i is phrase_index i.
    const std::vector<const QueryNode*>& phrases() const { return phrases_; }

    /// Re-renders the AST as a parseable search string.
    std::string to_string() const;

private:
    friend Query parse_query(const std::string&);
    void reindex();

    std::unique_ptr<QueryNode> root_;
    std::string text_;
    std::vector<const QueryNode*> phrases_;
};

/// Grammar: quoted phrases are atoms; AND, OR, AND NOT (case-insensitive);
/// parentheses group; optional TITLE: / TITLE-ABS-KEY: prefix scopes a
/// parenthesized subtree; OR binds loosest, NOT tightest. Throws
/// QuerySyntaxError with a character offset.
Query parse_query(const std::string& text);

struct PhraseTrace {
    std::string phrase;
    FieldScope effective_scope = FieldScope::TitleAbsKey;
    bool matched = false;                    // within the effective scope
    std::vector<std::string> matched_fields; // of "title","abstract","keywords", scope-blind
};

struct FilterTrace {
    std::string filter;
    bool passed = true;
    std::string detail;
};

struct MatchResult {
    bool matched = false;          // boolean_matched && filters_passed
    bool boolean_matched = false;
    bool filters_passed = true;
    std::vector<PhraseTrace> clause_trace;   // one entry per Phrase node
    std::vector<FilterTrace> filter_trace;   // active filters only
};

/// Total function: evaluates the query tree over the record's
/// title/abstract/keywords, then applies the config filters.
MatchResult evaluate(const Query& query, const BibRecord& record, const SearchConfig& config);

/// Subset of `corpus` matching query+config, in canonical record_id
/// order; the result carries the config and a derived name.
RecordSet run_search(const Query& query, const RecordSet& corpus, const SearchConfig& config);

/// Top-level AND-conjuncts (the root after unwrapping a Scoped node, or
/// the And children). Used for miss diagnosis and counterfactual edits.
std::vector<const QueryNode*> top_level_conjuncts(const Query& query);

/// "A", "B", ... label for conjunct `index`.
std::string conjunct_label(std::size_t index);

/// All phrase texts below `node`, in parse order.
std::vector<std::string> phrases_in_subtree(const QueryNode* node);

}  // namespace qg
