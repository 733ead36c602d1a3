#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "liouville/sieve.hpp"

namespace liouville {

// The binary expansion behind everything here: beta = sum (1+lambda(n))/2^n
// = sum b_n * 2^-(n-1) with b_n = (1+lambda(n))/2, so the integer part is
// b_1 and fractional bit m is b_(m+1).
//
// Digit windows over the b_n come in two modes:
//   overlapping: the digit at position n reads b_n ... b_(n+k-1)
//   paired:      digit m reads the disjoint window starting at
//                (m-1)*k + start_n; with start_n = 2 these are exactly the
//                radix-2^k fractional digits of beta.
enum class DigitMode { overlapping, paired };

DigitMode digit_mode_from_name(std::string_view name);
std::string_view digit_mode_name(DigitMode mode);

struct DigitStream {
    std::uint64_t base = 2;
    DigitMode mode = DigitMode::overlapping;
    std::uint64_t start_n = 1;  // first lambda index consumed
    std::vector<std::uint32_t> digits;
};

struct PrecisionSpec {
    std::uint64_t decimal_digits = 38;
    std::uint64_t guard_bits = 64;
};

struct FrequencyReport {
    std::uint64_t base = 0;
    std::uint64_t sample_size = 0;
    std::vector<std::uint64_t> counts;  // one per digit value
    double chi_square = 0.0;
    unsigned dof = 0;
};

/// b_n = (1 + lambda(n)) / 2 for n = 1..n_max.
DigitStream bit_stream(const SignTable& table, std::uint64_t n_max);

/// Base-4 digits, high bit first: overlapping digit at n is 2*b_n + b_(n+1);
/// paired digit m is 2*b_(2m) + b_(2m+1).
DigitStream base4_digits(const SignTable& table, DigitMode mode, std::uint64_t count);

/// Base-2^k digits for 1 <= k <= 32, high bit first, windows per mode.
DigitStream base2k_digits(const SignTable& table, unsigned k, DigitMode mode,
                          std::uint64_t count);

/// Table coverage needed to render `decimal_digits` digits: enough bits for
/// the decimal precision plus the guard margin.
std::uint64_t constant_bits_required(const PrecisionSpec& spec);

/// Decimal rendering of beta from the table's bits, truncated (not rounded)
/// to spec.decimal_digits digits after the point.
std::string evaluate_constant(const SignTable& table, const PrecisionSpec& spec);

/// Exact per-digit counts plus chi_square = sum (O_d - E)^2 / E with
/// E = sample_size / base.
FrequencyReport digit_frequencies(const DigitStream& stream);

/// 95% chi-square critical value, dof in [1, 31].
double chi_square_critical_95(unsigned dof);

struct NormalityEntry {
    std::uint64_t base = 0;
    DigitMode mode = DigitMode::overlapping;
    FrequencyReport freq;
    double critical_95 = 0.0;
    bool pass = false;
};

struct NormalityReport {
    std::uint64_t x = 0;
    std::vector<NormalityEntry> entries;
};

/// One FrequencyReport per (base, mode) pair over x digits each, judged
/// against the 95% critical value for dof = base - 1. Bases must be powers
/// of two in [2, 32].
NormalityReport normality_report(const SignTable& table,
                                 const std::vector<std::uint64_t>& bases,
                                 const std::vector<DigitMode>& modes, std::uint64_t x);

/// Lambda coverage needed to emit `count` digits in the given base/mode.
std::uint64_t digits_coverage_required(unsigned k, DigitMode mode, std::uint64_t count);

// Digit stream exports: one byte per digit (base <= 256), or bits packed
// LSB-first (base 2 only).
void write_digits_raw(const DigitStream& stream, const std::string& path);
void write_digits_packed(const DigitStream& stream, const std::string& path);

std::string frequency_report_json(const FrequencyReport& report);
std::string normality_report_json(const NormalityReport& report);

}  // namespace liouville
