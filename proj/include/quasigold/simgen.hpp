#pragma once

#include "quasigold/qgs.hpp"
#include "quasigold/query.hpp"
#include "quasigold/record_set.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qg {

/// A topic phrase placed into relevant papers' metadata with probability
/// `mention_prob`; papers in `always_in_venue` (when set) mention it with
/// probability 1, which lets tests force cluster-restricted QGS effects.
struct PhraseSpec {
    std::string text;
    double mention_prob = 1.0;
    std::optional<int> always_in_venue;
};

struct SimConfig {
    std::uint64_t seed = 1;
    int n_papers = 1000;
    double relevant_fraction = 0.1;
    std::vector<PhraseSpec> topic_phrases;
    /// Probability that an irrelevant paper mentions a topic phrase.
    double noise_mention_prob = 0.0;
    int n_venues = 10;
    int n_years = 10;
    int start_year = 2006;
    int n_authors = 50;
    /// Power-law concentration across venues: venue k gets weight
    /// (k+1)^-skew. 0 = uniform.
    double venue_skew = 1.0;
    double subject_misclass_rate = 0.0;
    std::map<std::string, double> source_coverage = {{"Scopus", 1.0}};
    /// Fraction of papers not yet indexed in any source at the cutoff.
    double indexing_lag_rate = 0.0;
};

/// Throws DataError on out-of-range fractions or n_papers < 1.
void validate(const SimConfig& config);

SimConfig sim_config_from_json_text(const std::string& json_text);
std::string sim_config_to_json_text(const SimConfig& config);

struct SimCorpus {
    RecordSet records;
    std::set<std::string> ground_truth_relevant;
    /// Per-source ids visible at the cutoff (indexing-lagged papers absent).
    std::map<std::string, std::set<std::string>> indexed_at_cutoff;
};

/// Deterministic for a given config (including seed).
SimCorpus generate(const SimConfig& config);

enum class QgsSampler { Uniform, SingleVenue, SingleYear };

std::string to_string(QgsSampler s);
std::optional<QgsSampler> parse_qgs_sampler(std::string_view s);

struct EstimatorReport {
    QgsSampler sampler = QgsSampler::Uniform;
    std::size_t qgs_size = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double true_recall = 0.0;       // exact, from ground truth
    double mean_estimated = 0.0;    // mean QGS-estimated recall across trials
    double mean_bias = 0.0;         // mean (estimated - true)
    double stddev_estimated = 0.0;
    double min_estimated = 0.0;
    double max_estimated = 0.0;
    /// 3*sqrt(p(1-p)/(qgs_size*trials)); binomial, so conservative for
    /// sampling without replacement.
    double three_sigma_bound = 0.0;
    bool bias_within_bound = false;
    std::string sampler_cluster;  // venue or year the restricted samplers drew from
};

/// Samples a QGS per trial from the known ground truth and compares the
/// QGS-estimated recall of `query` with the true recall. Uniform
/// sampling is unbiased; the cluster-restricted samplers exhibit the
/// over/under-estimation a badly constructed QGS produces.
/// Throws DataError when qgs_size exceeds the ground truth (or the
/// restricted sampler's pool).
EstimatorReport estimator_experiment(const SimCorpus& corpus, const Query& query,
                                     const SearchConfig& config, QgsSampler sampler,
                                     std::size_t qgs_size, std::size_t trials,
                                     std::uint64_t seed);

}  // namespace qg
