#include "quasigold/diagnose.hpp"

#include "quasigold/text.hpp"

#include <algorithm>
#include <sstream>

namespace qg {

std::string to_string(CauseKind k) {
    switch (k) {
        case CauseKind::SourceNotSearched: return "SOURCE_NOT_SEARCHED";
        case CauseKind::AfterCutoff: return "AFTER_CUTOFF";
        case CauseKind::DocTypeExcluded: return "DOC_TYPE_EXCLUDED";
        case CauseKind::SubjectAreaFilter: return "SUBJECT_AREA_FILTER";
        case CauseKind::TermAbsent: return "TERM_ABSENT";
        case CauseKind::GenericTermExcluder: return "GENERIC_TERM_EXCLUDER";
        case CauseKind::Unexplained: return "UNEXPLAINED";
    }
    return "UNEXPLAINED";
}

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string join(const std::set<std::string>& items, const char* sep) {
    std::string out;
    bool first = true;
    for (const auto& v : items) {
        if (!first) out += sep;
        out += v;
        first = false;
    }
    return out;
}

// True when the subtree evaluates false for this record, judged from the
// already-computed phrase traces (scope-aware, filter-blind).
bool subtree_false(const QueryNode* node, const std::vector<PhraseTrace>& trace) {
    switch (node->kind) {
        case QueryNode::Kind::Phrase:
            return !trace[static_cast<std::size_t>(node->phrase_index)].matched;
        case QueryNode::Kind::And:
            return std::any_of(node->children.begin(), node->children.end(),
                               [&](const auto& c) { return subtree_false(c.get(), trace); });
        case QueryNode::Kind::Or:
            return std::all_of(node->children.begin(), node->children.end(),
                               [&](const auto& c) { return subtree_false(c.get(), trace); });
        case QueryNode::Kind::Not:
            return !subtree_false(node->children[0].get(), trace);
        case QueryNode::Kind::Scoped:
            return subtree_false(node->children[0].get(), trace);
    }
    return false;
}

const QueryNode* unwrap_scoped(const QueryNode* node) {
    while (node && node->kind == QueryNode::Kind::Scoped) node = node->children[0].get();
    return node;
}

MissCause make_cause(CauseKind kind, std::string label,
                     std::map<std::string, std::string> evidence) {
    MissCause c;
    c.kind = kind;
    c.label = std::move(label);
    c.evidence = std::move(evidence);
    return c;
}

}  // namespace

std::vector<MissDiagnosis> diagnose_misses(const QGS& qgs, const RecordSet& result,
                                           const Query& query, const SearchConfig& config,
                                           const RecordSet& corpus,
                                           const std::vector<std::string>& generic_terms) {
    std::vector<MissDiagnosis> out;
    auto conjuncts = top_level_conjuncts(query);

    for (const auto& member : qgs.members) {
        const BibRecord* rec = corpus.find(member.record_id);
        if (!rec) throw DataError("QGS member does not resolve in corpus: " + member.record_id);
        if (result.contains(member.record_id)) continue;

        MatchResult mr = evaluate(query, *rec, config);
        MissDiagnosis diag;
        diag.record_id = member.record_id;

        if (mr.matched) {
            // The record satisfies query and filters yet the search did not
            // return it; exports cannot distinguish indexing lag from engine
            // inconsistency, so both collapse here.
            diag.causes.push_back(make_cause(
                CauseKind::Unexplained, "UNEXPLAINED",
                {{"note", "record matches query and filters; possible indexing lag at search "
                          "time or engine inconsistency"}}));
            out.push_back(std::move(diag));
            continue;
        }

        // External causes first, in fixed cheapest-to-verify order.
        if (!config.sources.empty() && !rec->source_databases.empty()) {
            bool covered = std::any_of(
                rec->source_databases.begin(), rec->source_databases.end(),
                [&](const std::string& s) { return config.sources.count(s) > 0; });
            if (!covered) {
                diag.causes.push_back(make_cause(CauseKind::SourceNotSearched,
                                                 "SOURCE_NOT_SEARCHED",
                                                 {{"record_sources", join(rec->source_databases, ";")},
                                                  {"searched_sources", join(config.sources, ";")}}));
            }
        }
        for (const FilterTrace& ft : mr.filter_trace) {
            if (ft.passed) continue;
            if (ft.filter == "cutoff-date") {
                diag.causes.push_back(make_cause(CauseKind::AfterCutoff,
                                                 "AFTER_CUTOFF",
                                                 {{"detail", ft.detail}}));
            } else if (ft.filter == "year-range") {
                diag.causes.push_back(make_cause(CauseKind::AfterCutoff, "AFTER_CUTOFF",
                                                 {{"detail", ft.detail},
                                                  {"filter", "year-range"}}));
            }
        }
        for (const FilterTrace& ft : mr.filter_trace) {
            if (ft.passed) continue;
            if (ft.filter == "doc-type") {
                diag.causes.push_back(make_cause(CauseKind::DocTypeExcluded, "DOC_TYPE_EXCLUDED",
                                                 {{"detail", ft.detail}}));
            } else if (ft.filter == "require-systematic") {
                diag.causes.push_back(make_cause(CauseKind::DocTypeExcluded, "DOC_TYPE_EXCLUDED",
                                                 {{"detail", ft.detail},
                                                  {"filter", "require-systematic"}}));
            }
        }
        for (const FilterTrace& ft : mr.filter_trace) {
            if (!ft.passed && ft.filter == "subject-area") {
                diag.causes.push_back(make_cause(
                    CauseKind::SubjectAreaFilter, "SUBJECT_AREA_FILTER",
                    {{"record_subject_areas", join(rec->subject_areas, ";")},
                     {"filter", config.subject_area_filter ? join(*config.subject_area_filter, ";")
                                                           : std::string()}}));
            }
        }

        // String-level causes: one TERM_ABSENT per failing top-level conjunct.
        if (mr.boolean_matched == false) {
            for (std::size_t i = 0; i < conjuncts.size(); ++i) {
                if (!subtree_false(conjuncts[i], mr.clause_trace)) continue;
                std::string label = conjunct_label(i);
                auto alternatives = phrases_in_subtree(conjuncts[i]);
                diag.causes.push_back(make_cause(
                    CauseKind::TermAbsent, "TERM_ABSENT(" + label + ")",
                    {{"conjunct", label}, {"phrase_alternatives", join(alternatives, " | ")}}));
            }
            // Generic-term lint: a mandatory single-phrase conjunct from the
            // generic list excluding this record.
            for (std::size_t i = 0; i < conjuncts.size(); ++i) {
                const QueryNode* node = unwrap_scoped(conjuncts[i]);
                if (!node || node->kind != QueryNode::Kind::Phrase) continue;
                if (!subtree_false(conjuncts[i], mr.clause_trace)) continue;
                std::string folded = fold_case(node->phrase);
                bool generic = std::any_of(generic_terms.begin(), generic_terms.end(),
                                           [&](const std::string& g) {
                                               return fold_case(g) == folded;
                                           });
                if (generic) {
                    diag.causes.push_back(make_cause(
                        CauseKind::GenericTermExcluder, "GENERIC_TERM_EXCLUDER(" + node->phrase + ")",
                        {{"phrase", node->phrase}, {"conjunct", conjunct_label(i)}}));
                }
            }
        }

        if (diag.causes.empty()) {
            // Boolean false can only come from a failing conjunct, and every
            // filter failure maps to a cause above, so this is unreachable;
            // keep the invariant "causes non-empty" explicit regardless.
            diag.causes.push_back(make_cause(CauseKind::Unexplained, "UNEXPLAINED",
                                             {{"note", "no modeled cause applies"}}));
        }
        out.push_back(std::move(diag));
    }
    std::sort(out.begin(), out.end(), [](const MissDiagnosis& a, const MissDiagnosis& b) {
        return a.record_id < b.record_id;
    });
    return out;
}

std::map<std::string, std::size_t> cause_tally(const std::vector<MissDiagnosis>& diagnoses) {
    std::map<std::string, std::size_t> tally;
    for (const auto& d : diagnoses)
        for (const auto& c : d.causes) ++tally[c.label];
    return tally;
}

std::string describe(const QueryEdit& edit) {
    std::ostringstream os;
    if (const auto* add = std::get_if<AddOrDisjunct>(&edit)) {
        os << "add OR-disjunct \"" << add->phrase << "\" to conjunct "
           << conjunct_label(add->conjunct_index);
    } else if (const auto* rem = std::get_if<RemoveAndConjunct>(&edit)) {
        os << "remove AND-conjunct " << conjunct_label(rem->conjunct_index);
    } else if (const auto* sc = std::get_if<ChangeScope>(&edit)) {
        os << "change scope to " << to_string(sc->scope);
    } else if (const auto* cf = std::get_if<ChangeFilter>(&edit)) {
        using Action = ChangeFilter::Action;
        switch (cf->action) {
            case Action::ClearSubjectAreas: os << "drop subject-area filter"; break;
            case Action::SetSubjectAreas: os << "set subject-area filter to " << join(cf->subject_areas, ";"); break;
            case Action::ClearCutoff: os << "drop cutoff date"; break;
            case Action::SetCutoff: os << "set cutoff year to " << cf->cutoff_year; break;
            case Action::ClearDocTypes: os << "drop doc-type filter"; break;
            case Action::SetDocTypes: {
                os << "set doc-type filter to ";
                bool first = true;
                for (DocType t : cf->doc_types) {
                    if (!first) os << ";";
                    os << to_string(t);
                    first = false;
                }
                break;
            }
            case Action::ClearYearRange: os << "drop year range"; break;
            case Action::SetYearRange:
                os << "set year range to [" << cf->year_range.min << "," << cf->year_range.max << "]";
                break;
        }
    }
    return os.str();
}

namespace {

std::size_t parse_conjunct_ref(const std::string& s) {
    std::string v = trim(s);
    if (v.empty()) throw DataError("edit: missing conjunct reference");
    if (v.size() == 1 && std::isalpha(static_cast<unsigned char>(v[0]))) {
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(v[0])));
        return static_cast<std::size_t>(c - 'A');
    }
    try {
        return static_cast<std::size_t>(std::stoul(v));
    } catch (const std::exception&) {
        throw DataError("edit: bad conjunct reference '" + v + "'");
    }
}

}  // namespace

QueryEdit parse_edit(const std::string& text) {
    std::string t = trim(text);
    auto colon = t.find(':');
    if (colon == std::string::npos) throw DataError("edit: expected '<kind>:...', got '" + t + "'");
    std::string kind = to_lower_ascii(t.substr(0, colon));
    std::string rest = t.substr(colon + 1);

    if (kind == "add-or") {
        auto second = rest.find(':');
        if (second == std::string::npos)
            throw DataError("edit: add-or needs '<conjunct>:<phrase>'");
        AddOrDisjunct e;
        e.conjunct_index = parse_conjunct_ref(rest.substr(0, second));
        e.phrase = trim(rest.substr(second + 1));
        if (e.phrase.empty()) throw DataError("edit: add-or phrase is empty");
        return e;
    }
    if (kind == "remove-and") {
        RemoveAndConjunct e;
        e.conjunct_index = parse_conjunct_ref(rest);
        return e;
    }
    if (kind == "scope") {
        auto scope = parse_field_scope(rest);
        if (!scope) throw DataError("edit: unknown scope '" + rest + "'");
        return ChangeScope{*scope};
    }
    if (kind == "filter") {
        auto eq = rest.find('=');
        if (eq == std::string::npos) throw DataError("edit: filter needs '<name>=<value>'");
        std::string name = to_lower_ascii(trim(rest.substr(0, eq)));
        std::string value = trim(rest.substr(eq + 1));
        ChangeFilter e;
        using Action = ChangeFilter::Action;
        if (name == "subject-areas") {
            if (value.empty()) {
                e.action = Action::ClearSubjectAreas;
            } else {
                e.action = Action::SetSubjectAreas;
                for (auto& v : split_trimmed(value, ';')) e.subject_areas.insert(v);
            }
        } else if (name == "cutoff") {
            if (value.empty()) {
                e.action = Action::ClearCutoff;
            } else {
                e.action = Action::SetCutoff;
                try {
                    e.cutoff_year = std::stoi(value.substr(0, 4));
                } catch (const std::exception&) {
                    throw DataError("edit: bad cutoff year '" + value + "'");
                }
            }
        } else if (name == "doc-types") {
            if (value.empty()) {
                e.action = Action::ClearDocTypes;
            } else {
                e.action = Action::SetDocTypes;
                for (auto& v : split_trimmed(value, ';')) e.doc_types.insert(parse_doc_type(v));
            }
        } else if (name == "year-range") {
            if (value.empty()) {
                e.action = Action::ClearYearRange;
            } else {
                auto dash = value.find(':');
                if (dash == std::string::npos)
                    throw DataError("edit: year-range needs '<min>:<max>'");
                e.action = Action::SetYearRange;
                try {
                    e.year_range.min = std::stoi(value.substr(0, dash));
                    e.year_range.max = std::stoi(value.substr(dash + 1));
                } catch (const std::exception&) {
                    throw DataError("edit: bad year range '" + value + "'");
                }
                if (e.year_range.min > e.year_range.max)
                    throw DataError("edit: year range min exceeds max");
            }
        } else {
            throw DataError("edit: unknown filter '" + name + "'");
        }
        return e;
    }
    throw DataError("edit: unknown edit kind '" + kind + "'");
}

std::pair<Query, SearchConfig> apply_edit(const Query& query, const SearchConfig& config,
                                          const QueryEdit& edit) {
    Query q = query;
    SearchConfig cfg = config;

    // Slot holding the top-level boolean node, below any Scoped wrappers.
    auto top_slot = [](std::unique_ptr<QueryNode>& root) -> std::unique_ptr<QueryNode>* {
        std::unique_ptr<QueryNode>* slot = &root;
        while ((*slot)->kind == QueryNode::Kind::Scoped) slot = &(*slot)->children[0];
        return slot;
    };

    if (const auto* add = std::get_if<AddOrDisjunct>(&edit)) {
        std::unique_ptr<QueryNode> root = query.root()->clone();
        std::unique_ptr<QueryNode>* slot = top_slot(root);
        std::size_t n = ((*slot)->kind == QueryNode::Kind::And) ? (*slot)->children.size() : 1;
        if (add->conjunct_index >= n)
            throw DataError("edit: conjunct index " + std::to_string(add->conjunct_index) +
                            " out of range (query has " + std::to_string(n) + " conjunct(s))");
        if ((*slot)->kind == QueryNode::Kind::And) slot = &(*slot)->children[add->conjunct_index];

        auto phrase_node = std::make_unique<QueryNode>();
        phrase_node->kind = QueryNode::Kind::Phrase;
        phrase_node->phrase = trim(add->phrase);
        phrase_node->phrase_tokens = tokenize(phrase_node->phrase);
        if (phrase_node->phrase_tokens.empty()) throw DataError("edit: phrase has no tokens");

        if ((*slot)->kind == QueryNode::Kind::Or) {
            (*slot)->children.push_back(std::move(phrase_node));
        } else {
            auto or_node = std::make_unique<QueryNode>();
            or_node->kind = QueryNode::Kind::Or;
            or_node->children.push_back(std::move(*slot));
            or_node->children.push_back(std::move(phrase_node));
            *slot = std::move(or_node);
        }
        q.reset_root(std::move(root));
        q.set_text(q.to_string());
        return {std::move(q), std::move(cfg)};
    }

    if (const auto* rem = std::get_if<RemoveAndConjunct>(&edit)) {
        std::unique_ptr<QueryNode> root = query.root()->clone();
        std::unique_ptr<QueryNode>* slot = top_slot(root);
        if ((*slot)->kind != QueryNode::Kind::And || (*slot)->children.size() < 2)
            throw DataError("edit: cannot remove a conjunct from a single-conjunct query");
        if (rem->conjunct_index >= (*slot)->children.size())
            throw DataError("edit: conjunct index " + std::to_string(rem->conjunct_index) +
                            " out of range (query has " +
                            std::to_string((*slot)->children.size()) + " conjunct(s))");
        (*slot)->children.erase((*slot)->children.begin() +
                                static_cast<std::ptrdiff_t>(rem->conjunct_index));
        if ((*slot)->children.size() == 1) *slot = std::move((*slot)->children[0]);
        q.reset_root(std::move(root));
        q.set_text(q.to_string());
        return {std::move(q), std::move(cfg)};
    }

    if (const auto* sc = std::get_if<ChangeScope>(&edit)) {
        cfg.field_scope = sc->scope;
        return {std::move(q), std::move(cfg)};
    }

    const auto& cf = std::get<ChangeFilter>(edit);
    using Action = ChangeFilter::Action;
    switch (cf.action) {
        case Action::ClearSubjectAreas: cfg.subject_area_filter.reset(); break;
        case Action::SetSubjectAreas: cfg.subject_area_filter = cf.subject_areas; break;
        case Action::ClearCutoff: cfg.cutoff_date.reset(); break;
        case Action::SetCutoff: cfg.cutoff_date = CutoffDate{cf.cutoff_year, std::nullopt}; break;
        case Action::ClearDocTypes: cfg.doc_type_filter.reset(); break;
        case Action::SetDocTypes: cfg.doc_type_filter = cf.doc_types; break;
        case Action::ClearYearRange: cfg.year_range.reset(); break;
        case Action::SetYearRange: cfg.year_range = cf.year_range; break;
    }
    return {std::move(q), std::move(cfg)};
}

CounterfactualReport counterfactual_search(const Query& query, const QueryEdit& edit,
                                           const RecordSet& corpus, const SearchConfig& config,
                                           const QGS& qgs, RecallThreshold threshold) {
    auto [edited_query, edited_config] = apply_edit(query, config, edit);

    CounterfactualReport report;
    report.edit_description = describe(edit);
    report.query_before = query.to_string();
    report.query_after = edited_query.to_string();

    RecordSet before = run_search(query, corpus, config);
    RecordSet after = run_search(edited_query, corpus, edited_config);
    report.before = validate_search(qgs, before, threshold);
    report.after = validate_search(qgs, after, threshold);
    report.result_size_delta =
        static_cast<long long>(after.size()) - static_cast<long long>(before.size());
    return report;
}

}  // namespace qg
