#include "quasigold/query.hpp"
#include "quasigold/text.hpp"

#include <algorithm>

namespace qg {

namespace {

struct TokenizedRecord {
    std::vector<std::string> title;
    std::vector<std::string> abstract;
    std::vector<std::vector<std::string>> keywords;  // each keyword is its own sequence
};

TokenizedRecord tokenize_record(const BibRecord& rec) {
    TokenizedRecord t;
    t.title = tokenize(rec.title);
    t.abstract = tokenize(rec.abstract);
    t.keywords.reserve(rec.keywords.size());
    for (const auto& kw : rec.keywords) t.keywords.push_back(tokenize(kw));
    return t;
}

bool contains_sequence(const std::vector<std::string>& haystack,
                       const std::vector<std::string>& needle) {
    if (needle.empty() || needle.size() > haystack.size()) return false;
    for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < needle.size(); ++j) {
            if (haystack[i + j] != needle[j]) {
                hit = false;
                break;
            }
        }
        if (hit) return true;
    }
    return false;
}

struct Evaluator {
    const TokenizedRecord& rec;
    std::vector<PhraseTrace>& trace;

    bool eval(const QueryNode* node, FieldScope scope) {
        switch (node->kind) {
            case QueryNode::Kind::Phrase: {
                bool in_title = contains_sequence(rec.title, node->phrase_tokens);
                bool in_abstract = contains_sequence(rec.abstract, node->phrase_tokens);
                bool in_keywords = std::any_of(
                    rec.keywords.begin(), rec.keywords.end(),
                    [&](const auto& kw) { return contains_sequence(kw, node->phrase_tokens); });
                bool matched =
                    scope == FieldScope::Title ? in_title : (in_title || in_abstract || in_keywords);
                PhraseTrace& pt = trace[static_cast<std::size_t>(node->phrase_index)];
                pt.phrase = node->phrase;
                pt.effective_scope = scope;
                pt.matched = matched;
                if (in_title) pt.matched_fields.push_back("title");
                if (in_abstract) pt.matched_fields.push_back("abstract");
                if (in_keywords) pt.matched_fields.push_back("keywords");
                return matched;
            }
            // No short-circuiting: the trace must cover every phrase.
            case QueryNode::Kind::And: {
                bool all = true;
                for (const auto& c : node->children) all = eval(c.get(), scope) && all;
                return all;
            }
            case QueryNode::Kind::Or: {
                bool any = false;
                for (const auto& c : node->children) any = eval(c.get(), scope) || any;
                return any;
            }
            case QueryNode::Kind::Not:
                return !eval(node->children[0].get(), scope);
            case QueryNode::Kind::Scoped:
                return eval(node->children[0].get(), node->scope);
        }
        return false;
    }
};

}  // namespace

MatchResult evaluate(const Query& query, const BibRecord& record, const SearchConfig& config) {
    MatchResult mr;
    mr.clause_trace.resize(query.phrases().size());

    TokenizedRecord tokens = tokenize_record(record);
    Evaluator ev{tokens, mr.clause_trace};
    mr.boolean_matched = query.root() ? ev.eval(query.root(), config.field_scope) : false;

    auto add_filter = [&](const std::string& name, bool passed, std::string detail) {
        mr.filter_trace.push_back({name, passed, std::move(detail)});
        if (!passed) mr.filters_passed = false;
    };

    if (config.subject_area_filter) {
        const auto& filter = *config.subject_area_filter;
        bool overlap = std::any_of(record.subject_areas.begin(), record.subject_areas.end(),
                                   [&](const std::string& a) { return filter.count(a) > 0; });
        bool passed = overlap || (record.subject_areas.empty() &&
                                  config.empty_subject_policy == EmptySubjectPolicy::Lenient);
        std::string detail = record.subject_areas.empty()
                                 ? "record has no subject areas"
                                 : (overlap ? "subject area in filter" : "no subject area overlap");
        add_filter("subject-area", passed, detail);
    }
    if (config.cutoff_date) {
        // Year granularity only: a record from the cutoff year passes.
        bool passed = !record.year || *record.year <= config.cutoff_date->year;
        add_filter("cutoff-date", passed,
                   record.year ? "year " + std::to_string(*record.year) + " vs cutoff " +
                                     std::to_string(config.cutoff_date->year)
                               : "record has no year; passes leniently");
    }
    if (config.doc_type_filter) {
        bool passed = config.doc_type_filter->count(record.doc_type) > 0;
        add_filter("doc-type", passed, "record doc_type " + to_string(record.doc_type));
    }
    if (config.year_range) {
        bool passed = !record.year ||
                      (*record.year >= config.year_range->min && *record.year <= config.year_range->max);
        add_filter("year-range", passed,
                   record.year ? "year " + std::to_string(*record.year) + " vs [" +
                                     std::to_string(config.year_range->min) + "," +
                                     std::to_string(config.year_range->max) + "]"
                               : "record has no year; passes leniently");
    }
    if (config.require_systematic) {
        bool passed = record.study_design != StudyDesign::InformalSurvey &&
                      record.study_design != StudyDesign::PrimaryStudy;
        add_filter("require-systematic", passed,
                   "record study_design " + to_string(record.study_design));
    }

    mr.matched = mr.boolean_matched && mr.filters_passed;
    return mr;
}

RecordSet run_search(const Query& query, const RecordSet& corpus, const SearchConfig& config) {
    std::vector<BibRecord> matched;
    for (const BibRecord& rec : corpus.records) {
        if (evaluate(query, rec, config).matched) matched.push_back(rec);
    }
    std::string qtext = query.text().empty() ? query.to_string() : query.text();
    if (qtext.size() > 60) qtext = qtext.substr(0, 57) + "...";
    RecordSet result = make_record_set("search[" + qtext + "|" + to_string(config.field_scope) + "]",
                                       std::move(matched), config);
    return result;
}

}  // namespace qg
