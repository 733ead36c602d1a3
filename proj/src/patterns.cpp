#include "liouville/patterns.hpp"

#include <bit>
#include <stdexcept>

#include "json.hpp"

namespace liouville {

namespace {

void require_cover(const SignTable& table, std::uint64_t from, std::uint64_t to,
                   const char* who) {
    if (!table.covers(from, to))
        throw std::runtime_error(std::string(who) + ": table [" + std::to_string(table.lo()) +
                                 ", " + std::to_string(table.hi()) + "] does not cover [" +
                                 std::to_string(from) + ", " + std::to_string(to) + "]");
}

constexpr std::uint64_t width_mask(std::uint64_t width) {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

constexpr const char* kPatternNames[4] = {"++", "+-", "-+", "--"};

}  // namespace

std::uint64_t PatternSpec::max_offset() const {
    return offsets.empty() ? 0 : offsets.back();
}

void PatternSpec::validate() const {
    if (offsets.empty() || offsets.size() > 32)
        throw std::invalid_argument("PatternSpec: k must be in [1, 32]");
    if (offsets.size() != signs.size())
        throw std::invalid_argument("PatternSpec: offsets and signs must have equal length");
    for (std::size_t i = 1; i < offsets.size(); ++i)
        if (offsets[i] <= offsets[i - 1])
            throw std::invalid_argument("PatternSpec: offsets must be strictly increasing");
    for (int s : signs)
        if (s != 1 && s != -1) throw std::invalid_argument("PatternSpec: signs must be +1 or -1");
}

SingleCounts count_single(const SignTable& table, std::uint64_t x) {
    if (x < 1) throw std::invalid_argument("count_single: x must be >= 1");
    require_cover(table, 1, x, "count_single");
    const std::uint64_t plus = table.count_plus(1, x);
    return {plus, x - plus};
}

PatternCounts count_double(const SignTable& table, std::int64_t t, std::uint64_t x) {
    if (t == 0)
        throw std::invalid_argument("count_double: t must be nonzero (use count_single)");
    if (x < 1) throw std::invalid_argument("count_double: x must be >= 1");
    const std::uint64_t n0 = t > 0 ? 1 : 1 + static_cast<std::uint64_t>(-t);
    PatternCounts counts;
    counts.x = x;
    counts.t = t;
    if (x < n0) return counts;  // empty counted range
    const std::uint64_t shift_hi = t > 0 ? x + static_cast<std::uint64_t>(t) : x;
    require_cover(table, 1, shift_hi, "count_double");

    // Two popcounts per 64-entry block give all four pair counts.
    std::uint64_t pp = 0, sa = 0, sb = 0;
    for (std::uint64_t base = n0; base <= x; base += 64) {
        const std::uint64_t width = std::min<std::uint64_t>(64, x - base + 1);
        const std::uint64_t mask = width_mask(width);
        const std::uint64_t a = table.word_at(base) & mask;
        const std::uint64_t b = table.word_at(t > 0 ? base + static_cast<std::uint64_t>(t)
                                                    : base - static_cast<std::uint64_t>(-t)) &
                                mask;
        pp += std::popcount(a & b);
        sa += std::popcount(a);
        sb += std::popcount(b);
    }
    const std::uint64_t total = x - n0 + 1;
    counts.pp = pp;
    counts.pm = sa - pp;
    counts.mp = sb - pp;
    counts.mm = total - sa - sb + pp;
    return counts;
}

std::uint64_t count_k_pattern(const SignTable& table, const PatternSpec& spec, std::uint64_t x) {
    spec.validate();
    if (x < 1) throw std::invalid_argument("count_k_pattern: x must be >= 1");
    require_cover(table, 1, x + spec.max_offset(), "count_k_pattern");

    std::uint64_t count = 0;
    for (std::uint64_t base = 1; base <= x; base += 64) {
        const std::uint64_t width = std::min<std::uint64_t>(64, x - base + 1);
        std::uint64_t hits = width_mask(width);
        for (std::size_t i = 0; i < spec.offsets.size() && hits != 0; ++i) {
            const std::uint64_t plane = table.word_at(base + spec.offsets[i]);
            hits &= spec.signs[i] > 0 ? plane : ~plane;
        }
        count += std::popcount(hits);
    }
    return count;
}

std::int64_t autocorrelation(const SignTable& table, std::int64_t t, std::uint64_t x) {
    if (x < 1) throw std::invalid_argument("autocorrelation: x must be >= 1");
    if (t == 0) {
        require_cover(table, 1, x, "autocorrelation");
        return static_cast<std::int64_t>(x);  // lambda(n)^2 = 1
    }
    return count_double(table, t, x).autocorr();
}

std::string decimal_ratio(std::uint64_t num, std::uint64_t den, int places) {
    if (den == 0) throw std::invalid_argument("decimal_ratio: denominator must be >= 1");
    if (places < 1 || places > 18)
        throw std::invalid_argument("decimal_ratio: places must be in [1, 18]");
    std::string out = std::to_string(num / den);
    out += '.';
    unsigned __int128 rem = num % den;
    for (int i = 0; i < places; ++i) {
        rem *= 10;
        out += static_cast<char>('0' + static_cast<unsigned>(rem / den));
        rem %= den;
    }
    while (out.size() >= 2 && out.back() == '0' && out[out.size() - 2] != '.') out.pop_back();
    return out;
}

std::array<std::string, 4> densities(const PatternCounts& counts, int places) {
    if (counts.x < 1) throw std::invalid_argument("densities: x must be >= 1");
    return {decimal_ratio(counts.pp, counts.x, places), decimal_ratio(counts.pm, counts.x, places),
            decimal_ratio(counts.mp, counts.x, places),
            decimal_ratio(counts.mm, counts.x, places)};
}

std::string pattern_counts_json(const PatternCounts& counts, int places) {
    const auto dens = densities(counts, places);
    nlohmann::ordered_json doc;
    doc["x"] = counts.x;
    doc["t"] = counts.t;
    doc["counts"] = {{"++", counts.pp}, {"+-", counts.pm}, {"-+", counts.mp}, {"--", counts.mm}};
    doc["autocorrelation"] = counts.autocorr();
    doc["densities"] = {{"++", dens[0]}, {"+-", dens[1]}, {"-+", dens[2]}, {"--", dens[3]}};
    return doc.dump(2) + "\n";
}

std::string pattern_counts_csv(const PatternCounts& counts, int places) {
    const auto dens = densities(counts, places);
    const std::uint64_t raw[4] = {counts.pp, counts.pm, counts.mp, counts.mm};
    std::string out = "pattern,count,density\n";
    for (int i = 0; i < 4; ++i) {
        out += kPatternNames[i];
        out += ',';
        out += std::to_string(raw[i]);
        out += ',';
        out += dens[i];
        out += '\n';
    }
    return out;
}

}  // namespace liouville
