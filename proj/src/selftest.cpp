#include "liouville/selftest.hpp"

#include <array>
#include <cstdint>

#include "liouville/averages.hpp"
#include "liouville/patterns.hpp"
#include "liouville/sieve.hpp"

namespace liouville {

namespace {

// Characteristic-function sums via point evaluation: each n contributes
// the product of (1 + eps_i * lambda(n + a_i)) / 2 terms. Independent of
// the sieve and of the bit-plane counter.
std::uint64_t char_sum_k(const PatternSpec& spec, std::uint64_t x) {
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        std::uint64_t product = 1;
        for (std::size_t i = 0; i < spec.offsets.size() && product; ++i)
            product *= static_cast<std::uint64_t>(
                           (1 + spec.signs[i] * liouville_point(n + spec.offsets[i]))) /
                       2;
        count += product;
    }
    return count;
}

SignTable with_flipped_bit(const SignTable& table, std::uint64_t n) {
    auto words = table.words();
    const std::uint64_t i = n - table.lo();
    words[i >> 6] ^= std::uint64_t{1} << (i & 63);
    return SignTable(table.lo(), table.hi(), std::move(words));
}

}  // namespace

std::vector<SelftestCheck> run_selftest(bool inject_fault) {
    std::vector<SelftestCheck> checks;
    const auto add = [&checks](std::string name, bool pass, std::string detail) {
        checks.push_back({std::move(name), pass, std::move(detail)});
    };

    SieveConfig cfg;
    SignTable table = sieve_liouville(1, 10'100, cfg);
    if (inject_fault) table = with_flipped_bit(table, 4242);

    {
        bool pass = true;
        std::string detail = "all of [1, 10^4] agree";
        for (std::uint64_t n = 1; n <= 10'000; ++n) {
            if (table.sign(n) != liouville_point(n)) {
                pass = false;
                detail = "first mismatch at n = " + std::to_string(n);
                break;
            }
        }
        add("sieve-vs-point-lambda", pass, detail);
    }
    {
        const MobiusTable mtable = sieve_mobius(1, 10'000, cfg);
        bool pass = true;
        std::string detail = "all of [1, 10^4] agree";
        for (std::uint64_t n = 1; n <= 10'000; ++n) {
            if (mtable.value(n) != mobius_point(n)) {
                pass = false;
                detail = "first mismatch at n = " + std::to_string(n);
                break;
            }
        }
        add("sieve-vs-point-mobius", pass, detail);
    }
    {
        bool pass = true;
        std::string detail = "x <= 1000, t in {1, 2, 3}";
        const int e1[4] = {1, 1, -1, -1};
        const int e2[4] = {1, -1, 1, -1};
        for (std::int64_t t = 1; t <= 3 && pass; ++t) {
            std::array<std::uint64_t, 4> running{};
            for (std::uint64_t x = 1; x <= 1000; ++x) {
                const int l1 = liouville_point(x);
                const int l2 = liouville_point(x + static_cast<std::uint64_t>(t));
                for (int i = 0; i < 4; ++i)
                    running[i] +=
                        static_cast<std::uint64_t>((1 + e1[i] * l1) * (1 + e2[i] * l2)) / 4;
                const PatternCounts counts = count_double(table, t, x);
                if (counts.pp != running[0] || counts.pm != running[1] ||
                    counts.mp != running[2] || counts.mm != running[3]) {
                    pass = false;
                    detail = "mismatch at t = " + std::to_string(t) + ", x = " + std::to_string(x);
                    break;
                }
            }
        }
        add("double-counts-vs-characteristic-sums", pass, detail);
    }
    {
        const std::vector<PatternSpec> specs = {
            {{0}, {1}},
            {{0, 1}, {-1, -1}},
            {{0, 2, 3}, {1, -1, 1}},
            {{1, 4}, {-1, 1}},
            {{0, 1, 2, 5}, {1, 1, -1, -1}},
        };
        bool pass = true;
        std::string detail = std::to_string(specs.size()) + " specs at x = 500";
        for (const auto& spec : specs) {
            if (count_k_pattern(table, spec, 500) != char_sum_k(spec, 500)) {
                pass = false;
                detail = "mismatch for a k = " + std::to_string(spec.k()) + " spec";
                break;
            }
        }
        add("k-pattern-vs-characteristic-sums", pass, detail);
    }
    {
        // 4 * N(e1, e2) = C + e1*S0 + e2*St + e1*e2*A, all four patterns.
        bool pass = true;
        std::string detail = "x in {100, 1000, 10000}, t in {1, 2, 3}";
        for (const std::uint64_t x : {100ull, 1000ull, 10000ull}) {
            for (std::int64_t t = 1; t <= 3 && pass; ++t) {
                const PatternCounts counts = count_double(table, t, x);
                std::int64_t s0 = 0, st = 0;
                for (std::uint64_t n = 1; n <= x; ++n) {
                    s0 += table.sign(n);
                    st += table.sign(n + static_cast<std::uint64_t>(t));
                }
                const std::int64_t c = static_cast<std::int64_t>(x);
                const std::int64_t a = autocorrelation(table, t, x);
                const std::uint64_t quads[4] = {counts.pp, counts.pm, counts.mp, counts.mm};
                const int e1[4] = {1, 1, -1, -1};
                const int e2[4] = {1, -1, 1, -1};
                for (int i = 0; i < 4; ++i) {
                    if (4 * static_cast<std::int64_t>(quads[i]) !=
                        c + e1[i] * s0 + e2[i] * st + e1[i] * e2[i] * a) {
                        pass = false;
                        detail = "pattern " + std::to_string(i) + " fails at x = " +
                                 std::to_string(x) + ", t = " + std::to_string(t);
                        break;
                    }
                }
            }
        }
        add("four-sum-identity", pass, detail);
    }
    {
        bool pass = true;
        std::string detail = "t in {0, 1, 2, 3, -1, -2}, x in {1, 537, 10000}";
        for (const std::uint64_t x : {1ull, 537ull, 10000ull}) {
            if (autocorrelation(table, 0, x) != static_cast<std::int64_t>(x)) {
                pass = false;
                detail = "t = 0 identity fails at x = " + std::to_string(x);
                break;
            }
            for (const std::int64_t t : {1, 2, 3, -1, -2}) {
                const PatternCounts counts = count_double(table, t, x);
                if (autocorrelation(table, t, x) != counts.autocorr()) {
                    pass = false;
                    detail = "pair-count identity fails at x = " + std::to_string(x) +
                             ", t = " + std::to_string(t);
                    break;
                }
            }
        }
        add("autocorrelation-identity", pass, detail);
    }
    {
        bool pass = true;
        std::string detail = "counts sum to the counted-range size";
        for (const std::int64_t t : {1, 2, 3, -1, -2}) {
            for (const std::uint64_t x : {1ull, 37ull, 1000ull, 10000ull}) {
                const std::uint64_t n0 = t > 0 ? 1 : 1 + static_cast<std::uint64_t>(-t);
                const std::uint64_t expected = x >= n0 ? x - n0 + 1 : 0;
                if (count_double(table, t, x).counted() != expected) {
                    pass = false;
                    detail = "sum mismatch at x = " + std::to_string(x) +
                             ", t = " + std::to_string(t);
                    break;
                }
            }
        }
        add("pair-counts-total", pass, detail);
    }
    {
        bool pass = true;
        std::string detail = "N+ - N- = L(x) at x in {10, 100, 1000, 10000}";
        const std::vector<std::uint64_t> xs = {10, 100, 1000, 10000};
        const IntSeries series = summatory_liouville(table, xs);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const SingleCounts singles = count_single(table, xs[i]);
            if (static_cast<std::int64_t>(singles.n_plus) -
                    static_cast<std::int64_t>(singles.n_minus) !=
                series.values[i]) {
                pass = false;
                detail = "mismatch at x = " + std::to_string(xs[i]);
                break;
            }
        }
        add("single-counts-vs-summatory", pass, detail);
    }
    return checks;
}

bool all_passed(const std::vector<SelftestCheck>& checks) {
    for (const auto& check : checks)
        if (!check.pass) return false;
    return true;
}

}  // namespace liouville
