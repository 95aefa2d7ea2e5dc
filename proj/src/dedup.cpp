#include "quasigold/dedup.hpp"

#include "quasigold/text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

namespace qg {

namespace {

// "H.K.V.", "A." or "A" but not "Ali": every alphabetic run is one letter.
bool looks_like_initials(const std::string& token) {
    std::size_t run = 0;
    for (unsigned char c : token) {
        if (std::isalpha(c)) {
            if (++run > 1) return false;
        } else {
            run = 0;
        }
    }
    return true;
}

}  // namespace

std::string first_author_surname(const BibRecord& rec) {
    if (rec.authors.empty()) return {};
    const std::string& name = rec.authors.front();
    std::size_t comma = name.find(',');
    if (comma != std::string::npos) return normalize_title(name.substr(0, comma));
    // No comma: either "V. Garousi" or Scopus-style "Garousi V.". Drop
    // initials and take the last remaining token.
    auto tokens = split_trimmed(name, ' ');
    std::string surname;
    for (const auto& t : tokens)
        if (!looks_like_initials(t)) surname = t;
    if (surname.empty() && !tokens.empty()) surname = tokens.back();
    return normalize_title(surname);
}

namespace {

std::set<std::string> title_token_set(const std::string& title) {
    auto tokens = tokenize(title);
    return {tokens.begin(), tokens.end()};
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 1.0;
    std::size_t inter = 0;
    for (const auto& t : a) inter += b.count(t);
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

double title_jaccard(const std::string& title_a, const std::string& title_b) {
    return jaccard(title_token_set(title_a), title_token_set(title_b));
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

DedupResult dedup(const RecordSet& set, const DedupPolicy& policy) {
    const auto& recs = set.records;
    const std::size_t n = recs.size();

    std::vector<std::string> norm_titles(n);
    std::vector<std::set<std::string>> token_sets(n);
    std::vector<std::string> surnames(n);
    for (std::size_t i = 0; i < n; ++i) {
        norm_titles[i] = normalize_title(recs[i].title);
        token_sets[i] = title_token_set(recs[i].title);
        surnames[i] = first_author_surname(recs[i]);
    }

    auto author_ok = [&](std::size_t i, std::size_t j) {
        return !policy.require_author_match || surnames[i] == surnames[j];
    };

    UnionFind uf(n);
    DedupReport report;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!author_ok(i, j)) continue;
            bool exact = norm_titles[i] == norm_titles[j];
            double sim = exact ? 1.0 : jaccard(token_sets[i], token_sets[j]);
            bool dup = policy.mode == DedupMode::Strict
                           ? exact
                           : sim >= policy.title_similarity_threshold;
            if (dup) uf.unite(i, j);
            if (!exact && sim >= policy.title_similarity_threshold && sim < 1.0) {
                report.near_duplicates.push_back(
                    {std::min(recs[i].record_id, recs[j].record_id),
                     std::max(recs[i].record_id, recs[j].record_id), sim});
            }
        }
    }
    std::sort(report.near_duplicates.begin(), report.near_duplicates.end(),
              [](const NearDuplicatePair& a, const NearDuplicatePair& b) {
                  return std::tie(a.id_a, a.id_b) < std::tie(b.id_a, b.id_b);
              });

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);

    std::vector<BibRecord> survivors;
    survivors.reserve(groups.size());
    for (auto& [root, members] : groups) {
        // Survivor: most populated fields, then smallest record_id.
        std::size_t best = members.front();
        for (std::size_t m : members) {
            int cm = recs[m].populated_field_count();
            int cb = recs[best].populated_field_count();
            if (cm > cb || (cm == cb && recs[m].record_id < recs[best].record_id)) best = m;
        }
        BibRecord merged = recs[best];
        if (members.size() > 1) {
            for (std::size_t m : members) {
                if (m == best) continue;
                for (const auto& kw : recs[m].keywords) {
                    if (std::find(merged.keywords.begin(), merged.keywords.end(), kw) ==
                        merged.keywords.end())
                        merged.keywords.push_back(kw);
                }
                merged.subject_areas.insert(recs[m].subject_areas.begin(),
                                            recs[m].subject_areas.end());
                merged.source_databases.insert(recs[m].source_databases.begin(),
                                               recs[m].source_databases.end());
            }
            // Keyword order must not depend on input order.
            std::sort(merged.keywords.begin(), merged.keywords.end());
        }
        survivors.push_back(std::move(merged));

        if (members.size() > 1) {
            DedupCluster cluster;
            cluster.survivor_id = recs[best].record_id;
            for (std::size_t m : members) cluster.member_ids.push_back(recs[m].record_id);
            std::sort(cluster.member_ids.begin(), cluster.member_ids.end());
            report.removed_count += members.size() - 1;
            report.clusters.push_back(std::move(cluster));
        }
    }
    std::sort(report.clusters.begin(), report.clusters.end(),
              [](const DedupCluster& a, const DedupCluster& b) {
                  return a.survivor_id < b.survivor_id;
              });

    DedupResult out;
    out.set = make_record_set(set.name, std::move(survivors), set.search_config);
    out.set.created_date = set.created_date;
    out.report = std::move(report);
    return out;
}

}  // namespace qg
