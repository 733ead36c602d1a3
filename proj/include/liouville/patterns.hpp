#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "liouville/sieve.hpp"

namespace liouville {

struct SingleCounts {
    std::uint64_t n_plus = 0;
    std::uint64_t n_minus = 0;
};

// One k-sign pattern: strictly increasing offsets a_0 < ... < a_{k-1} and
// target signs in {-1, +1}, 1 <= k <= 32.
struct PatternSpec {
    std::vector<std::uint64_t> offsets;
    std::vector<int> signs;

    std::size_t k() const { return offsets.size(); }
    std::uint64_t max_offset() const;
    void validate() const;
};

// The four (lambda(n), lambda(n+t)) pair counts over the counted range
// n in [max(1, 1-t), x].
struct PatternCounts {
    std::uint64_t x = 0;
    std::int64_t t = 0;
    std::uint64_t pp = 0;
    std::uint64_t pm = 0;
    std::uint64_t mp = 0;
    std::uint64_t mm = 0;

    std::uint64_t counted() const { return pp + pm + mp + mm; }
    std::int64_t autocorr() const {
        return static_cast<std::int64_t>(pp + mm) - static_cast<std::int64_t>(pm + mp);
    }
};

/// n_plus = #{n <= x : lambda(n) = +1}, n_minus likewise; sums to x.
SingleCounts count_single(const SignTable& table, std::uint64_t x);

/// Pair counts for shift t != 0. Counting starts at n = max(1, 1-t) so both
/// lambda arguments stay >= 1; the table must cover [1, x + max(t, 0)].
PatternCounts count_double(const SignTable& table, std::int64_t t, std::uint64_t x);

/// #{1 <= n <= x : lambda(n + a_i) = eps_i for all i}.
std::uint64_t count_k_pattern(const SignTable& table, const PatternSpec& spec, std::uint64_t x);

/// Sum of lambda(n) * lambda(n+t) over the counted range; x exactly for t = 0.
std::int64_t autocorrelation(const SignTable& table, std::int64_t t, std::uint64_t x);

/// num/den as a truncated decimal string with `places` fractional digits,
/// trailing zeros trimmed down to one.
std::string decimal_ratio(std::uint64_t num, std::uint64_t den, int places);

/// Per-pattern densities count/x in the order ++, +-, -+, --.
std::array<std::string, 4> densities(const PatternCounts& counts, int places = 6);

std::string pattern_counts_json(const PatternCounts& counts, int places = 6);
std::string pattern_counts_csv(const PatternCounts& counts, int places = 6);

}  // namespace liouville
