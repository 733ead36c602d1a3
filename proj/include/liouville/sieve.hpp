#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace liouville {

// Knobs for the segmented sieves. Tables produced with different
// segment_length / worker_count values are bit-identical; only memory use
// and wall time change.
struct SieveConfig {
    std::uint64_t segment_length = std::uint64_t{1} << 22;
    unsigned worker_count = 1;
    std::uint64_t memory_cap_bytes = default_memory_cap();

    // 2 GiB unless the LIOUVILLE_MEMORY_CAP environment variable (bytes)
    // says otherwise.
    static std::uint64_t default_memory_cap();

    void validate() const;
};

/// lambda(n) = (-1)^Omega(n) by trial-division factorization. Deterministic
/// and independent of any sieve; serves as the point oracle for SignTable.
int liouville_point(std::uint64_t n);

/// mu(n): 0 if n has a squared prime factor, else (-1)^omega(n).
int mobius_point(std::uint64_t n);

// Packed Liouville signs over [lo, hi]: bit = 1 encodes lambda(n) = +1.
// Immutable after construction; safe to share across threads.
class SignTable {
public:
    SignTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    std::uint64_t size() const { return hi_ - lo_ + 1; }
    bool covers(std::uint64_t from, std::uint64_t to) const {
        return from >= lo_ && to <= hi_ && from <= to;
    }

    bool is_plus(std::uint64_t n) const;
    int sign(std::uint64_t n) const;

    /// 64 bits for entries n, n+1, ..., n+63 (LSB = n); positions past hi
    /// read as zero. Building block for the bit-plane pattern counts.
    std::uint64_t word_at(std::uint64_t n) const;

    /// Number of entries with lambda = +1 in [from, to].
    std::uint64_t count_plus(std::uint64_t from, std::uint64_t to) const;

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<std::uint64_t> words_;
};

// Packed Mobius values over [lo, hi], two bits per entry
// (00 -> 0, 01 -> +1, 10 -> -1).
class MobiusTable {
public:
    MobiusTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    std::uint64_t size() const { return hi_ - lo_ + 1; }
    bool covers(std::uint64_t from, std::uint64_t to) const {
        return from >= lo_ && to <= hi_ && from <= to;
    }

    int value(std::uint64_t n) const;

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<std::uint64_t> words_;
};

/// Segmented Liouville sieve over [lo, hi]. Every entry equals
/// liouville_point(n); segments are processed independently (in parallel for
/// worker_count > 1) and merged into one table.
SignTable sieve_liouville(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg = {});

/// Segmented Mobius sieve over [lo, hi], same contract as sieve_liouville.
MobiusTable sieve_mobius(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg = {});

// Binary SignTable dump: magic "LIOU", version u16, reserved u16, lo u64,
// hi u64 (all little-endian), then the packed bits LSB-first within each
// byte with the entry for lo at bit 0.
void save_sign_table(const SignTable& table, const std::string& path);
SignTable load_sign_table(const std::string& path);

}  // namespace liouville
