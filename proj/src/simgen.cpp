#include "quasigold/simgen.hpp"

#include "quasigold/rng.hpp"
#include "quasigold/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qg {

using ordered_json = nlohmann::ordered_json;

namespace {

// Filler vocabulary deliberately far from search-string vocabulary.
const char* kFiller[] = {
    "basalt",  "fjord",   "meadow",  "quartz",  "lagoon",  "orchid",  "tundra",  "ember",
    "garnet",  "willow",  "harbor",  "mosaic",  "pebble",  "saffron", "timber",  "velvet",
    "walnut",  "zephyr",  "cobalt",  "dahlia",  "falcon",  "glacier", "heather", "indigo",
    "juniper", "kestrel", "lantern", "marble",  "nectar",  "obsidian","prairie", "quill",
    "russet",  "sierra",  "thistle", "umber",   "violet",  "wharf",   "yarrow",  "zenith",
};
constexpr std::size_t kFillerCount = sizeof(kFiller) / sizeof(kFiller[0]);

const char* kWrongSubjects[] = {"Engineering", "Mathematics", "Social Sciences"};

std::string filler_words(Rng& rng, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ' ';
        out += kFiller[rng.index(kFillerCount)];
    }
    return out;
}

std::size_t sample_weighted(Rng& rng, const std::vector<double>& cumulative) {
    double u = rng.next_double() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(idx, cumulative.size() - 1);
}

void check_fraction(double v, const char* name) {
    if (v < 0.0 || v > 1.0)
        throw DataError(std::string("sim config: ") + name + " must be in [0,1]");
}

}  // namespace

void validate(const SimConfig& config) {
    if (config.n_papers < 1) throw DataError("sim config: n_papers must be >= 1");
    if (config.n_venues < 1) throw DataError("sim config: n_venues must be >= 1");
    if (config.n_years < 1) throw DataError("sim config: n_years must be >= 1");
    if (config.n_authors < 1) throw DataError("sim config: n_authors must be >= 1");
    check_fraction(config.relevant_fraction, "relevant_fraction");
    check_fraction(config.noise_mention_prob, "noise_mention_prob");
    check_fraction(config.subject_misclass_rate, "subject_misclass_rate");
    check_fraction(config.indexing_lag_rate, "indexing_lag_rate");
    for (const auto& p : config.topic_phrases) {
        check_fraction(p.mention_prob, "topic_phrases.mention_prob");
        if (trim(p.text).empty()) throw DataError("sim config: empty topic phrase");
    }
    for (const auto& [name, cov] : config.source_coverage) {
        check_fraction(cov, ("source_coverage[" + name + "]").c_str());
    }
}

SimConfig sim_config_from_json_text(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text);
    SimConfig c;
    c.seed = j.value("seed", c.seed);
    c.n_papers = j.value("n_papers", c.n_papers);
    c.relevant_fraction = j.value("relevant_fraction", c.relevant_fraction);
    c.noise_mention_prob = j.value("noise_mention_prob", c.noise_mention_prob);
    c.n_venues = j.value("n_venues", c.n_venues);
    c.n_years = j.value("n_years", c.n_years);
    c.start_year = j.value("start_year", c.start_year);
    c.n_authors = j.value("n_authors", c.n_authors);
    c.venue_skew = j.value("venue_skew", c.venue_skew);
    c.subject_misclass_rate = j.value("subject_misclass_rate", c.subject_misclass_rate);
    c.indexing_lag_rate = j.value("indexing_lag_rate", c.indexing_lag_rate);
    if (j.contains("topic_phrases")) {
        c.topic_phrases.clear();
        for (const auto& p : j["topic_phrases"]) {
            PhraseSpec spec;
            spec.text = p.at("text").get<std::string>();
            spec.mention_prob = p.value("mention_prob", 1.0);
            if (p.contains("always_in_venue") && !p["always_in_venue"].is_null())
                spec.always_in_venue = p["always_in_venue"].get<int>();
            c.topic_phrases.push_back(std::move(spec));
        }
    }
    if (j.contains("source_coverage")) {
        c.source_coverage.clear();
        for (const auto& [name, cov] : j["source_coverage"].items())
            c.source_coverage[name] = cov.get<double>();
    }
    validate(c);
    return c;
}

std::string sim_config_to_json_text(const SimConfig& config) {
    ordered_json j;
    j["seed"] = config.seed;
    j["n_papers"] = config.n_papers;
    j["relevant_fraction"] = config.relevant_fraction;
    j["topic_phrases"] = ordered_json::array();
    for (const auto& p : config.topic_phrases) {
        ordered_json pj;
        pj["text"] = p.text;
        pj["mention_prob"] = p.mention_prob;
        if (p.always_in_venue) pj["always_in_venue"] = *p.always_in_venue;
        j["topic_phrases"].push_back(pj);
    }
    j["noise_mention_prob"] = config.noise_mention_prob;
    j["n_venues"] = config.n_venues;
    j["n_years"] = config.n_years;
    j["start_year"] = config.start_year;
    j["n_authors"] = config.n_authors;
    j["venue_skew"] = config.venue_skew;
    j["subject_misclass_rate"] = config.subject_misclass_rate;
    j["source_coverage"] = ordered_json::object();
    for (const auto& [name, cov] : config.source_coverage) j["source_coverage"][name] = cov;
    j["indexing_lag_rate"] = config.indexing_lag_rate;
    return j.dump(2) + "\n";
}

SimCorpus generate(const SimConfig& config) {
    validate(config);
    const std::size_t n = static_cast<std::size_t>(config.n_papers);

    // Ground-truth relevant subset: exactly round(fraction * n) papers.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng pick_rng = Rng::derive(config.seed, 0xD1CE);
    pick_rng.shuffle(order);
    const std::size_t n_relevant = static_cast<std::size_t>(
        std::llround(config.relevant_fraction * static_cast<double>(n)));
    std::vector<bool> relevant(n, false);
    for (std::size_t i = 0; i < n_relevant; ++i) relevant[order[i]] = true;

    std::vector<double> venue_cumulative;
    venue_cumulative.reserve(static_cast<std::size_t>(config.n_venues));
    double acc = 0.0;
    for (int v = 0; v < config.n_venues; ++v) {
        acc += std::pow(static_cast<double>(v + 1), -config.venue_skew);
        venue_cumulative.push_back(acc);
    }

    SimCorpus corpus;
    std::vector<BibRecord> records;
    records.reserve(n);
    char idbuf[24];

    for (std::size_t i = 0; i < n; ++i) {
        Rng rng = Rng::derive(config.seed, 0xABCD0000ULL + i);
        BibRecord rec;
        std::snprintf(idbuf, sizeof(idbuf), "sim:%06zu", i);
        const std::string id = idbuf;

        const std::size_t venue_idx = sample_weighted(rng, venue_cumulative);
        rec.venue = "Venue " + std::to_string(venue_idx);
        rec.publisher =
            "Publisher " + std::to_string(venue_idx % std::max(1, config.n_venues / 3 + 1));
        rec.year = config.start_year + static_cast<int>(rng.index(static_cast<std::size_t>(config.n_years)));
        const std::size_t author_idx = rng.index(static_cast<std::size_t>(config.n_authors));
        rec.authors.push_back("Author" + std::to_string(author_idx) + ", A.");
        if (rng.bernoulli(0.6))
            rec.authors.push_back("Author" +
                                  std::to_string(rng.index(static_cast<std::size_t>(config.n_authors))) +
                                  ", B.");
        rec.doc_type = rng.bernoulli(0.5) ? DocType::JournalArticle : DocType::ConferencePaper;

        rec.subject_areas.insert(rng.bernoulli(config.subject_misclass_rate)
                                     ? kWrongSubjects[rng.index(3)]
                                     : "Computer Science");

        std::string title = "Study " + std::to_string(i) + " of " + filler_words(rng, 3);
        std::string abstract = "We report " + filler_words(rng, 10) + ".";
        std::vector<std::string> keywords = {kFiller[rng.index(kFillerCount)],
                                             kFiller[rng.index(kFillerCount)]};

        for (const PhraseSpec& phrase : config.topic_phrases) {
            double p = relevant[i] ? phrase.mention_prob : config.noise_mention_prob;
            bool forced = relevant[i] && phrase.always_in_venue &&
                          static_cast<std::size_t>(*phrase.always_in_venue) == venue_idx;
            bool mention = forced || rng.bernoulli(p);
            if (!mention) continue;
            switch (rng.index(3)) {
                case 0: title += " " + phrase.text; break;
                case 1: abstract += " This concerns " + phrase.text + "."; break;
                default: keywords.push_back(phrase.text); break;
            }
        }
        rec.title = std::move(title);
        rec.abstract = std::move(abstract);
        rec.keywords = std::move(keywords);

        bool lagged = rng.bernoulli(config.indexing_lag_rate);
        for (const auto& [source, coverage] : config.source_coverage) {
            if (!rng.bernoulli(coverage)) continue;
            rec.source_databases.insert(source);
            if (!lagged) corpus.indexed_at_cutoff[source].insert(id);
        }

        finalize_record(rec, /*database_id=*/{}, /*explicit_id=*/id);
        if (relevant[i]) corpus.ground_truth_relevant.insert(id);
        records.push_back(std::move(rec));
    }
    corpus.records = make_record_set("sim-corpus", std::move(records));
    return corpus;
}

std::string to_string(QgsSampler s) {
    switch (s) {
        case QgsSampler::Uniform: return "uniform";
        case QgsSampler::SingleVenue: return "single-venue";
        case QgsSampler::SingleYear: return "single-year";
    }
    return "uniform";
}

std::optional<QgsSampler> parse_qgs_sampler(std::string_view s) {
    std::string v = to_lower_ascii(trim(s));
    if (v == "uniform") return QgsSampler::Uniform;
    if (v == "single-venue") return QgsSampler::SingleVenue;
    if (v == "single-year") return QgsSampler::SingleYear;
    return std::nullopt;
}

EstimatorReport estimator_experiment(const SimCorpus& corpus, const Query& query,
                                     const SearchConfig& config, QgsSampler sampler,
                                     std::size_t qgs_size, std::size_t trials,
                                     std::uint64_t seed) {
    if (trials == 0) throw DataError("estimator experiment needs at least one trial");
    if (qgs_size == 0) throw DataError("qgs_size must be >= 1");

    const RecordSet result = run_search(query, corpus.records, config);
    const std::set<std::string>& truth = corpus.ground_truth_relevant;
    if (truth.empty()) throw DataError("corpus has no ground-truth relevant papers");

    std::set<std::string> found_truth;
    for (const auto& id : truth)
        if (result.contains(id)) found_truth.insert(id);
    const double true_recall =
        static_cast<double>(found_truth.size()) / static_cast<double>(truth.size());

    // Sampling pool: all of the ground truth, or its largest single
    // venue/year cluster for the restricted samplers.
    std::vector<std::string> pool(truth.begin(), truth.end());
    std::string cluster;
    if (sampler != QgsSampler::Uniform) {
        std::map<std::string, std::vector<std::string>> clusters;
        for (const auto& id : pool) {
            const BibRecord* rec = corpus.records.find(id);
            if (!rec) continue;
            std::string key = sampler == QgsSampler::SingleVenue
                                  ? rec->venue
                                  : (rec->year ? std::to_string(*rec->year) : std::string());
            if (!key.empty()) clusters[key].push_back(id);
        }
        if (clusters.empty()) throw DataError("restricted sampler found no cluster values");
        for (const auto& [key, ids] : clusters) {
            if (cluster.empty() || ids.size() > clusters[cluster].size()) cluster = key;
        }
        pool = clusters[cluster];
    }
    if (qgs_size > pool.size())
        throw DataError("qgs_size " + std::to_string(qgs_size) + " exceeds sampling pool of " +
                        std::to_string(pool.size()));

    EstimatorReport report;
    report.sampler = sampler;
    report.qgs_size = qgs_size;
    report.trials = trials;
    report.seed = seed;
    report.true_recall = true_recall;
    report.sampler_cluster = cluster;

    double sum = 0.0, sum_sq = 0.0;
    double min_est = 1.0, max_est = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::derive(seed, t);
        // Partial Fisher-Yates: first qgs_size entries are the sample.
        std::vector<std::string> sample = pool;
        for (std::size_t i = 0; i < qgs_size; ++i) {
            std::size_t j = i + rng.index(sample.size() - i);
            std::swap(sample[i], sample[j]);
        }
        std::size_t hits = 0;
        for (std::size_t i = 0; i < qgs_size; ++i)
            if (found_truth.count(sample[i])) ++hits;
        double est = static_cast<double>(hits) / static_cast<double>(qgs_size);
        sum += est;
        sum_sq += est * est;
        min_est = std::min(min_est, est);
        max_est = std::max(max_est, est);
    }
    const double mean = sum / static_cast<double>(trials);
    report.mean_estimated = mean;
    report.mean_bias = mean - true_recall;
    double variance = sum_sq / static_cast<double>(trials) - mean * mean;
    report.stddev_estimated = std::sqrt(std::max(0.0, variance));
    report.min_estimated = trials ? min_est : 0.0;
    report.max_estimated = max_est;
    report.three_sigma_bound =
        3.0 * std::sqrt(true_recall * (1.0 - true_recall) /
                        (static_cast<double>(qgs_size) * static_cast<double>(trials)));
    report.bias_within_bound = std::abs(report.mean_bias) <= report.three_sigma_bound;
    return report;
}

}  // namespace qg
