#include "liouville/normality.hpp"

#include <bit>
#include <fstream>
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

// 95th percentile of chi-square, dof 1..31 (base 2 up to base 32).
constexpr double kChiSquare95[31] = {
    3.841,  5.991,  7.815,  9.488,  11.070, 12.592, 14.067, 15.507, 16.919, 18.307, 19.675,
    21.026, 22.362, 23.685, 24.996, 26.296, 27.587, 28.869, 30.144, 31.410, 32.671, 33.924,
    35.172, 36.415, 37.652, 38.885, 40.113, 41.337, 42.557, 43.773, 44.985};

unsigned k_for_base(std::uint64_t base) {
    if (base < 2 || std::popcount(base) != 1 || base > (std::uint64_t{1} << 32))
        throw std::invalid_argument("base must be a power of two in [2, 2^32]");
    return static_cast<unsigned>(std::countr_zero(base));
}

}  // namespace

DigitMode digit_mode_from_name(std::string_view name) {
    if (name == "overlapping") return DigitMode::overlapping;
    if (name == "paired") return DigitMode::paired;
    throw std::invalid_argument("unknown digit mode: " + std::string(name));
}

std::string_view digit_mode_name(DigitMode mode) {
    return mode == DigitMode::overlapping ? "overlapping" : "paired";
}

DigitStream bit_stream(const SignTable& table, std::uint64_t n_max) {
    if (n_max < 1) throw std::invalid_argument("bit_stream: n_max must be >= 1");
    require_cover(table, 1, n_max, "bit_stream");
    DigitStream stream;
    stream.base = 2;
    stream.mode = DigitMode::overlapping;
    stream.start_n = 1;
    stream.digits.reserve(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n)
        stream.digits.push_back(table.is_plus(n) ? 1 : 0);
    return stream;
}

DigitStream base4_digits(const SignTable& table, DigitMode mode, std::uint64_t count) {
    if (count < 1) throw std::invalid_argument("base4_digits: count must be >= 1");
    DigitStream stream;
    stream.base = 4;
    stream.mode = mode;
    stream.digits.reserve(count);
    if (mode == DigitMode::overlapping) {
        require_cover(table, 1, count + 1, "base4_digits");
        stream.start_n = 1;
        for (std::uint64_t n = 1; n <= count; ++n) {
            const std::uint32_t high = table.is_plus(n) ? 1 : 0;
            const std::uint32_t low = table.is_plus(n + 1) ? 1 : 0;
            stream.digits.push_back(2 * high + low);
        }
    } else {
        require_cover(table, 1, 2 * count + 1, "base4_digits");
        stream.start_n = 2;
        for (std::uint64_t m = 1; m <= count; ++m) {
            const std::uint32_t high = table.is_plus(2 * m) ? 1 : 0;
            const std::uint32_t low = table.is_plus(2 * m + 1) ? 1 : 0;
            stream.digits.push_back(2 * high + low);
        }
    }
    return stream;
}

DigitStream base2k_digits(const SignTable& table, unsigned k, DigitMode mode,
                          std::uint64_t count) {
    if (k < 1 || k > 32) throw std::invalid_argument("base2k_digits: k must be in [1, 32]");
    if (count < 1) throw std::invalid_argument("base2k_digits: count must be >= 1");
    require_cover(table, 1, digits_coverage_required(k, mode, count), "base2k_digits");

    DigitStream stream;
    stream.base = std::uint64_t{1} << k;
    stream.mode = mode;
    stream.start_n = mode == DigitMode::overlapping ? 1 : 2;
    stream.digits.reserve(count);
    const std::uint64_t step = mode == DigitMode::overlapping ? 1 : k;
    for (std::uint64_t m = 0; m < count; ++m) {
        const std::uint64_t window = stream.start_n + m * step;
        std::uint32_t digit = 0;
        for (unsigned i = 0; i < k; ++i)
            digit = (digit << 1) | (table.is_plus(window + i) ? 1u : 0u);
        stream.digits.push_back(digit);
    }
    return stream;
}

std::uint64_t digits_coverage_required(unsigned k, DigitMode mode, std::uint64_t count) {
    if (k < 1 || k > 32) throw std::invalid_argument("k must be in [1, 32]");
    // overlapping windows start at 1; paired windows start at 2 so that the
    // digits are the radix-2^k fractional digits of the constant.
    return mode == DigitMode::overlapping ? count + k - 1 : k * count + 1;
}

std::uint64_t constant_bits_required(const PrecisionSpec& spec) {
    if (spec.decimal_digits < 1)
        throw std::invalid_argument("PrecisionSpec: decimal_digits must be >= 1");
    if (spec.decimal_digits > 100'000'000)
        throw std::invalid_argument("PrecisionSpec: decimal_digits is implausibly large");
    // ceil(D * log2(10)) with slight slack (3322/1000 > log2 10), plus guard.
    const std::uint64_t bits = (spec.decimal_digits * 3322 + 999) / 1000;
    return bits + spec.guard_bits;
}

std::string evaluate_constant(const SignTable& table, const PrecisionSpec& spec) {
    const std::uint64_t need = constant_bits_required(spec);
    if (table.lo() != 1 || table.hi() < need)
        throw std::runtime_error("evaluate_constant: table must cover [1, " +
                                 std::to_string(need) + "] for " +
                                 std::to_string(spec.decimal_digits) + " digits");

    // Exact fixed point: fractional bit m of the constant is b_(m+1).
    const std::uint64_t frac_bits = table.hi() - 1;
    const std::size_t n_words = static_cast<std::size_t>((frac_bits + 63) / 64);
    std::vector<std::uint64_t> frac(n_words, 0);
    for (std::uint64_t m = 1; m <= frac_bits; ++m) {
        if (table.is_plus(m + 1))
            frac[static_cast<std::size_t>((m - 1) / 64)] |= std::uint64_t{1}
                                                            << (63 - ((m - 1) % 64));
    }

    std::string out;
    out.reserve(spec.decimal_digits + 2);
    out += table.is_plus(1) ? '1' : '0';
    out += '.';
    for (std::uint64_t d = 0; d < spec.decimal_digits; ++d) {
        std::uint64_t carry = 0;
        for (std::size_t j = n_words; j-- > 0;) {
            const unsigned __int128 prod =
                static_cast<unsigned __int128>(frac[j]) * 10 + carry;
            frac[j] = static_cast<std::uint64_t>(prod);
            carry = static_cast<std::uint64_t>(prod >> 64);
        }
        out += static_cast<char>('0' + carry);  // carry < 10: the fraction is < 1
    }
    return out;
}

FrequencyReport digit_frequencies(const DigitStream& stream) {
    if (stream.digits.empty()) throw std::invalid_argument("digit_frequencies: empty stream");
    if (stream.digits.size() < stream.base)
        throw std::invalid_argument("digit_frequencies: sample_size must be >= base");
    FrequencyReport report;
    report.base = stream.base;
    report.sample_size = stream.digits.size();
    report.dof = static_cast<unsigned>(stream.base - 1);
    report.counts.assign(static_cast<std::size_t>(stream.base), 0);
    for (const std::uint32_t digit : stream.digits) {
        if (digit >= stream.base)
            throw std::invalid_argument("digit_frequencies: digit out of range for base");
        ++report.counts[digit];
    }
    const double expected =
        static_cast<double>(report.sample_size) / static_cast<double>(report.base);
    double chi = 0.0;
    for (const std::uint64_t observed : report.counts) {
        const double diff = static_cast<double>(observed) - expected;
        chi += diff * diff / expected;
    }
    report.chi_square = chi;
    return report;
}

double chi_square_critical_95(unsigned dof) {
    if (dof < 1 || dof > 31)
        throw std::invalid_argument("chi_square_critical_95: dof must be in [1, 31]");
    return kChiSquare95[dof - 1];
}

NormalityReport normality_report(const SignTable& table,
                                 const std::vector<std::uint64_t>& bases,
                                 const std::vector<DigitMode>& modes, std::uint64_t x) {
    if (x < 1) throw std::invalid_argument("normality_report: x must be >= 1");
    NormalityReport report;
    report.x = x;
    for (const std::uint64_t base : bases) {
        const unsigned k = k_for_base(base);
        if (base > 32)
            throw std::invalid_argument(
                "normality_report: no critical value beyond dof 31 (base 32)");
        for (const DigitMode mode : modes) {
            NormalityEntry entry;
            entry.base = base;
            entry.mode = mode;
            entry.freq = digit_frequencies(base2k_digits(table, k, mode, x));
            entry.critical_95 = chi_square_critical_95(entry.freq.dof);
            entry.pass = entry.freq.chi_square < entry.critical_95;
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

void write_digits_raw(const DigitStream& stream, const std::string& path) {
    if (stream.base > 256)
        throw std::invalid_argument("write_digits_raw: one byte per digit needs base <= 256");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_digits_raw: cannot open " + path);
    for (const std::uint32_t digit : stream.digits)
        out.put(static_cast<char>(digit & 0xff));
    if (!out) throw std::runtime_error("write_digits_raw: write failed for " + path);
}

void write_digits_packed(const DigitStream& stream, const std::string& path) {
    if (stream.base != 2)
        throw std::invalid_argument("write_digits_packed: packed bits are base 2 only");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_digits_packed: cannot open " + path);
    std::uint8_t byte = 0;
    unsigned filled = 0;
    for (const std::uint32_t digit : stream.digits) {
        byte |= static_cast<std::uint8_t>((digit & 1) << filled);
        if (++filled == 8) {
            out.put(static_cast<char>(byte));
            byte = 0;
            filled = 0;
        }
    }
    if (filled > 0) out.put(static_cast<char>(byte));
    if (!out) throw std::runtime_error("write_digits_packed: write failed for " + path);
}

std::string frequency_report_json(const FrequencyReport& report) {
    nlohmann::ordered_json doc;
    doc["base"] = report.base;
    doc["sample_size"] = report.sample_size;
    doc["counts"] = report.counts;
    doc["chi_square"] = report.chi_square;
    doc["dof"] = report.dof;
    return doc.dump(2) + "\n";
}

std::string normality_report_json(const NormalityReport& report) {
    nlohmann::ordered_json doc;
    doc["x"] = report.x;
    doc["entries"] = nlohmann::ordered_json::array();
    for (const auto& entry : report.entries) {
        nlohmann::ordered_json e;
        e["base"] = entry.base;
        e["mode"] = std::string(digit_mode_name(entry.mode));
        e["counts"] = entry.freq.counts;
        e["sample_size"] = entry.freq.sample_size;
        e["chi_square"] = entry.freq.chi_square;
        e["dof"] = entry.freq.dof;
        e["critical_95"] = entry.critical_95;
        e["pass"] = entry.pass;
        doc["entries"].push_back(std::move(e));
    }
    return doc.dump(2) + "\n";
}

}  // namespace liouville
