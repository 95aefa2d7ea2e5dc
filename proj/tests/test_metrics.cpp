#include "quasigold/metrics.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qg;

TEST_CASE("recall and precision reproduce the published 13-member QGS numbers") {
    auto f = ts::table3_qgs13();
    CHECK(round_percent(recall(f.qgs, f.first_result)) == doctest::Approx(61.54));
    CHECK(round_percent(precision(f.qgs, f.first_result)) == doctest::Approx(6.61));
    CHECK(round_percent(recall(f.qgs, f.third_result)) == doctest::Approx(92.31));
    CHECK(round_percent(precision(f.qgs, f.third_result)) == doctest::Approx(2.11));
}

TEST_CASE("recall of the identical set is 100%") {
    auto f = ts::table3_qgs13();
    std::vector<BibRecord> members;
    for (const auto& m : f.qgs.members) members.push_back(ts::make_rec(m.record_id, "T " + m.record_id));
    auto exact = make_record_set("exact", std::move(members));
    CHECK(recall(f.qgs, exact) == doctest::Approx(1.0));
    CHECK(precision(f.qgs, exact) == doctest::Approx(1.0));
}

TEST_CASE("empty QGS and empty result are errors") {
    auto f = ts::table3_qgs13();
    QGS empty;
    CHECK_THROWS_AS(recall(empty, f.first_result), DataError);
    CHECK_THROWS_AS(validate_search(empty, f.first_result), DataError);
    auto empty_set = make_record_set("none", {});
    CHECK_THROWS_AS(precision(f.qgs, empty_set), DataError);
}

TEST_CASE("validate_search verdicts at the 70-80 threshold") {
    auto f = ts::table3_qgs13();
    auto third = validate_search(f.qgs, f.third_result);
    CHECK(third.recall_percent == doctest::Approx(92.31));
    CHECK(third.precision_percent == doctest::Approx(2.11));
    CHECK(third.verdict == Verdict::Accept);
    CHECK(third.found.size() == 12);
    CHECK(third.missed.size() == 1);
    CHECK(third.qgs_size == 13);

    auto first = validate_search(f.qgs, f.first_result);
    CHECK(first.recall_percent == doctest::Approx(61.54));
    CHECK(first.verdict == Verdict::Revise);

    // 50% snowball recall also revises.
    auto sb = ts::snowball_832();
    RecordSet result = forward_snowball(sb.seeds, sb.citations, sb.corpus);
    auto eval = validate_search(sb.qgs20, result);
    CHECK(eval.recall_percent == doctest::Approx(50.00));
    CHECK(eval.verdict == Verdict::Revise);
}

TEST_CASE("58-member QGS reproduces the published table including the 19-found row") {
    auto f = ts::table3_qgs58();
    auto first = validate_search(f.qgs, f.first_result);
    auto third = validate_search(f.qgs, f.third_result);
    CHECK(first.recall_percent == doctest::Approx(32.76));
    CHECK(first.precision_percent == doctest::Approx(15.70));
    CHECK(third.recall_percent == doctest::Approx(75.86));
    CHECK(third.precision_percent == doctest::Approx(7.73));
}

TEST_CASE("overlap of disjoint and identical sets") {
    auto a = make_record_set("A", ts::filler_records("a:", 3));
    auto b = make_record_set("B", ts::filler_records("b:", 5));
    auto report = overlap({a, b});
    CHECK(report.union_size == 8);
    REQUIRE(report.regions.size() == 3);
    CHECK(report.regions[0].signature == "A");
    CHECK(report.regions[0].count == 3);
    CHECK(report.regions[1].signature == "B");
    CHECK(report.regions[1].count == 5);
    CHECK(report.regions[2].signature == "A&B");
    CHECK(report.regions[2].count == 0);

    auto a2 = make_record_set("A2", ts::filler_records("x:", 4));
    auto b2 = make_record_set("B2", ts::filler_records("x:", 4));
    auto same = overlap({a2, b2});
    CHECK(same.union_size == 4);
    CHECK(same.regions[2].count == 4);  // the A&B region
    for (const auto& c : same.contributions) {
        CHECK(c.exclusive == doctest::Approx(0.0));
        CHECK(c.overall == doctest::Approx(1.0));
    }
}

TEST_CASE("overlap rejects fewer than 2 or more than 6 sets") {
    auto a = make_record_set("A", ts::filler_records("a:", 2));
    CHECK_THROWS_AS(overlap({a}), DataError);
    std::vector<RecordSet> seven(7, a);
    CHECK_THROWS_AS(overlap(seven), DataError);
}

namespace {

std::vector<RecordSet> random_set_family(Rng& rng, std::size_t n_sets) {
    // Shared id pool so overlaps actually occur.
    std::vector<RecordSet> sets;
    for (std::size_t s = 0; s < n_sets; ++s) {
        std::vector<BibRecord> recs;
        std::size_t n = 1 + rng.index(50);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t id = rng.index(60);
            recs.push_back(ts::make_rec("pool:" + std::to_string(id), "Pool " + std::to_string(id)));
        }
        sets.push_back(make_record_set("S" + std::to_string(s), std::move(recs)));
    }
    return sets;
}

}  // namespace

TEST_CASE("overlap equals brute-force membership enumeration on random families") {
    for (unsigned trial = 0; trial < 300; ++trial) {
        Rng rng = Rng::derive(8080, trial);
        std::size_t n_sets = 2 + rng.index(3);  // 2..4
        auto sets = random_set_family(rng, n_sets);
        auto report = overlap(sets);

        // Oracle: per-record membership signature, counted directly.
        std::map<unsigned, std::size_t> expected;
        std::set<std::string> union_ids;
        for (const auto& s : sets)
            for (const auto& r : s.records) union_ids.insert(r.record_id);
        for (const auto& id : union_ids) {
            unsigned mask = 0;
            for (std::size_t s = 0; s < sets.size(); ++s)
                if (sets[s].contains(id)) mask |= 1u << s;
            ++expected[mask];
        }

        CAPTURE(trial);
        REQUIRE(report.union_size == union_ids.size());
        std::size_t region_sum = 0;
        for (const auto& region : report.regions) {
            auto it = expected.find(region.mask);
            std::size_t want = it == expected.end() ? 0 : it->second;
            REQUIRE(region.count == want);
            region_sum += region.count;
        }
        REQUIRE(region_sum == report.union_size);

        // Chen metrics: exclusive <= overall, overall = exclusive + overlap.
        for (const auto& c : report.contributions) {
            REQUIRE(c.exclusive <= c.overall + 1e-12);
            REQUIRE(c.overall == doctest::Approx(c.exclusive + c.overlap));
        }
    }
}

TEST_CASE("removing a set merges regions consistently") {
    for (unsigned trial = 0; trial < 100; ++trial) {
        Rng rng = Rng::derive(4545, trial);
        auto sets = random_set_family(rng, 3);
        auto full = overlap(sets);
        auto reduced = overlap({sets[0], sets[1]});

        // Each 2-set region equals the sum of the 3-set regions that
        // restrict to it (records only in the dropped set vanish).
        for (const auto& region : reduced.regions) {
            std::size_t expected = 0;
            for (const auto& r3 : full.regions)
                if ((r3.mask & 3u) == region.mask) expected += r3.count;
            CAPTURE(trial);
            REQUIRE(region.count == expected);
        }
    }
}

TEST_CASE("recall monotone in additions, precision non-increasing with irrelevant additions") {
    auto f = ts::table3_qgs13();
    auto extra_records = f.first_result.records;
    for (auto& r : ts::filler_records("extra:", 40)) extra_records.push_back(std::move(r));
    auto grown = make_record_set("grown", std::move(extra_records));
    CHECK(recall(f.qgs, grown) >= recall(f.qgs, f.first_result));
    CHECK(precision(f.qgs, grown) <= precision(f.qgs, f.first_result));

    // Recall invariant under permutation/duplication-free re-ingestion.
    auto shuffled = f.first_result.records;
    Rng rng(42);
    rng.shuffle(shuffled);
    auto reingested = make_record_set("again", std::move(shuffled));
    CHECK(recall(f.qgs, reingested) == doctest::Approx(recall(f.qgs, f.first_result)));
}
