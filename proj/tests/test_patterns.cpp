#include <array>

#include "doctest.h"
#include "liouville/averages.hpp"
#include "liouville/patterns.hpp"
#include "liouville/sieve.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {

const SignTable& shared_table() {
    static const SignTable table = [] {
        SieveConfig cfg;
        cfg.worker_count = 2;
        return sieve_liouville(1, 110'000, cfg);
    }();
    return table;
}

}  // namespace

TEST_CASE("count_single on the examples") {
    const auto& table = shared_table();
    const SingleCounts ten = count_single(table, 10);
    CHECK(ten.n_plus == 5);
    CHECK(ten.n_minus == 5);
    const SingleCounts one = count_single(table, 1);
    CHECK(one.n_plus == 1);
    CHECK(one.n_minus == 0);
    const SingleCounts two = count_single(table, 2);
    CHECK(two.n_plus == 1);
    CHECK(two.n_minus == 1);
    CHECK_THROWS_AS(count_single(table, 0), std::invalid_argument);
    CHECK_THROWS_AS(count_single(table, 200'000), std::runtime_error);
}

TEST_CASE("count_double reproduces the x = 10^5 table") {
    const PatternCounts counts = count_double(shared_table(), 1, 100'000);
    CHECK(counts.pp == 24873);
    CHECK(counts.pm == 24983);
    CHECK(counts.mp == 24983);
    CHECK(counts.mm == 25161);
    CHECK(counts.counted() == 100'000);
    CHECK(counts.autocorr() == 68);
}

TEST_CASE("count_double on the small examples") {
    const auto& table = shared_table();
    const PatternCounts twenty = count_double(table, 1, 20);
    CHECK(twenty.pp == 3);
    CHECK(twenty.pm == 5);
    CHECK(twenty.mp == 5);
    CHECK(twenty.mm == 7);

    const PatternCounts one = count_double(table, 1, 1);
    CHECK(one.pp == 0);
    CHECK(one.pm == 1);
    CHECK(one.mp == 0);
    CHECK(one.mm == 0);

    // Negative shift: counted n starts at 1 - t.
    const PatternCounts neg = count_double(table, -1, 10);
    CHECK(neg.pp == 1);
    CHECK(neg.pm == 3);
    CHECK(neg.mp == 3);
    CHECK(neg.mm == 2);
    CHECK(neg.counted() == 9);

    CHECK_THROWS_AS(count_double(table, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(count_double(table, 1, 110'000), std::runtime_error);
}

TEST_CASE("count_double equals the characteristic-function sums") {
    const auto& table = shared_table();
    for (const std::int64_t t : {1, 2, 3, -1, -2}) {
        for (const std::uint64_t x : {1ull, 2ull, 17ull, 63ull, 64ull, 65ull, 200ull, 997ull}) {
            const auto expected = oracle::char_double(t, x);
            const PatternCounts counts = count_double(table, t, x);
            REQUIRE(counts.pp == expected[0]);
            REQUIRE(counts.pm == expected[1]);
            REQUIRE(counts.mp == expected[2]);
            REQUIRE(counts.mm == expected[3]);
        }
    }
}

TEST_CASE("count_k_pattern on the examples") {
    const auto& table = shared_table();
    const PatternSpec single{{0}, {1}};
    CHECK(count_k_pattern(table, single, 10) == 5);
    CHECK(count_k_pattern(table, single, 10) == count_single(table, 10).n_plus);

    const PatternSpec both_minus{{0, 1}, {-1, -1}};
    CHECK(count_k_pattern(table, both_minus, 20) == 7);

    const PatternSpec triple{{0, 1, 2}, {1, 1, 1}};
    CHECK(count_k_pattern(table, triple, 100) == 13);
}

TEST_CASE("count_k_pattern equals the characteristic-function sums") {
    const auto& table = shared_table();
    const std::vector<PatternSpec> specs = {
        {{0, 3}, {1, -1}},
        {{1, 2, 7}, {-1, -1, 1}},
        {{0, 1, 2, 3}, {1, -1, -1, 1}},
        {{5}, {-1}},
    };
    for (const auto& spec : specs) {
        REQUIRE(count_k_pattern(table, spec, 400) == oracle::char_k(spec.offsets, spec.signs, 400));
    }
}

TEST_CASE("k-pattern counts over all sign vectors sum to x") {
    const auto& table = shared_table();
    const std::vector<std::uint64_t> offsets = {0, 2, 5};
    std::uint64_t total = 0;
    for (unsigned bits = 0; bits < 8; ++bits) {
        PatternSpec spec;
        spec.offsets = offsets;
        for (unsigned i = 0; i < 3; ++i) spec.signs.push_back((bits >> i) & 1 ? 1 : -1);
        total += count_k_pattern(table, spec, 300);
    }
    CHECK(total == 300);
}

TEST_CASE("PatternSpec validation") {
    const auto& table = shared_table();
    CHECK_THROWS_AS(count_k_pattern(table, PatternSpec{{}, {}}, 10), std::invalid_argument);
    CHECK_THROWS_AS(count_k_pattern(table, PatternSpec{{0, 0}, {1, 1}}, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(count_k_pattern(table, PatternSpec{{0}, {2}}, 10), std::invalid_argument);
    CHECK_THROWS_AS(count_k_pattern(table, PatternSpec{{0}, {1, -1}}, 10), std::invalid_argument);
    PatternSpec too_long;
    for (std::uint64_t i = 0; i < 33; ++i) {
        too_long.offsets.push_back(i);
        too_long.signs.push_back(1);
    }
    CHECK_THROWS_AS(count_k_pattern(table, too_long, 10), std::invalid_argument);
}

TEST_CASE("autocorrelation identities and examples") {
    const auto& table = shared_table();
    CHECK(autocorrelation(table, 1, 100'000) == 68);
    CHECK(autocorrelation(table, 0, 537) == 537);
    CHECK(autocorrelation(table, 1, 20) == 0);
    for (const std::int64_t t : {1, 2, 3, -1, -2}) {
        for (const std::uint64_t x : {10ull, 100ull, 1000ull}) {
            const PatternCounts counts = count_double(table, t, x);
            REQUIRE(autocorrelation(table, t, x) == counts.autocorr());
        }
    }
}

TEST_CASE("four-sum expansion holds exactly") {
    const auto& table = shared_table();
    for (const std::uint64_t x : {100ull, 1000ull, 10000ull}) {
        for (std::int64_t t = 1; t <= 3; ++t) {
            const PatternCounts counts = count_double(table, t, x);
            std::int64_t s0 = 0, st = 0;
            for (std::uint64_t n = 1; n <= x; ++n) {
                s0 += table.sign(n);
                st += table.sign(n + static_cast<std::uint64_t>(t));
            }
            const std::int64_t c = static_cast<std::int64_t>(x);
            const std::int64_t a = autocorrelation(table, t, x);
            REQUIRE(4 * static_cast<std::int64_t>(counts.pp) == c + s0 + st + a);
            REQUIRE(4 * static_cast<std::int64_t>(counts.pm) == c + s0 - st - a);
            REQUIRE(4 * static_cast<std::int64_t>(counts.mp) == c - s0 + st - a);
            REQUIRE(4 * static_cast<std::int64_t>(counts.mm) == c - s0 - st + a);
        }
    }
}

TEST_CASE("single-count difference equals the summatory function") {
    const auto& table = shared_table();
    for (const std::uint64_t x : {10ull, 100ull, 1000ull, 10000ull, 100000ull}) {
        const SingleCounts singles = count_single(table, x);
        const IntSeries series = summatory_liouville(table, {x});
        REQUIRE(static_cast<std::int64_t>(singles.n_plus) -
                    static_cast<std::int64_t>(singles.n_minus) ==
                series.values[0]);
    }
}

TEST_CASE("densities render as truncated decimals") {
    PatternCounts paper;
    paper.x = 100'000;
    paper.t = 1;
    paper.pp = 24873;
    paper.pm = 24983;
    paper.mp = 24983;
    paper.mm = 25161;
    const auto dens = densities(paper);
    CHECK(dens[0] == "0.24873");
    CHECK(dens[1] == "0.24983");
    CHECK(dens[2] == "0.24983");
    CHECK(dens[3] == "0.25161");

    PatternCounts uniform;
    uniform.x = 4;
    uniform.pp = uniform.pm = uniform.mp = uniform.mm = 1;
    const auto quarter = densities(uniform);
    for (const auto& d : quarter) CHECK(d == "0.25");

    const PatternCounts twenty = count_double(shared_table(), 1, 20);
    const auto d20 = densities(twenty);
    CHECK(d20[0] == "0.15");
    CHECK(d20[1] == "0.25");
    CHECK(d20[2] == "0.25");
    CHECK(d20[3] == "0.35");

    CHECK(decimal_ratio(1, 3, 6) == "0.333333");
    CHECK(decimal_ratio(2, 3, 4) == "0.6666");  // truncated, not rounded
    CHECK(decimal_ratio(5, 5, 6) == "1.0");
    CHECK(decimal_ratio(0, 7, 6) == "0.0");
    CHECK_THROWS_AS(decimal_ratio(1, 0, 6), std::invalid_argument);
    CHECK_THROWS_AS(decimal_ratio(1, 2, 0), std::invalid_argument);

    PatternCounts empty;
    empty.x = 0;
    CHECK_THROWS_AS(densities(empty), std::invalid_argument);
}

TEST_CASE("pattern counts serialize to JSON and CSV") {
    const PatternCounts counts = count_double(shared_table(), 1, 100'000);
    const std::string json = pattern_counts_json(counts);
    CHECK(json.find("\"++\": 24873") != std::string::npos);
    CHECK(json.find("\"autocorrelation\": 68") != std::string::npos);
    CHECK(json.find("\"0.24873\"") != std::string::npos);
    const std::string csv = pattern_counts_csv(counts);
    CHECK(csv.find("pattern,count,density") == 0);
    CHECK(csv.find("--,25161,0.25161") != std::string::npos);
}
