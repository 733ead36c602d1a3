#include "liouville/sieve.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace liouville {

namespace {

constexpr std::uint64_t kDefaultCap = std::uint64_t{2} << 30;  // 2 GiB
constexpr std::uint64_t kMaxPoint = (std::uint64_t{1} << 63) - 1;

std::uint64_t isqrt(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Smallest-prime-factor linear sieve; every composite is crossed once.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<std::uint32_t> spf(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : primes) {
            if (p > spf[i] || i * p > limit) break;
            spf[i * p] = p;
        }
    }
    return primes;
}

std::uint64_t first_multiple_at_least(std::uint64_t lo, std::uint64_t step) {
    return (lo + step - 1) / step * step;
}

void check_memory(const SieveConfig& cfg, std::uint64_t table_bytes, std::uint64_t base_limit) {
    if (table_bytes > cfg.memory_cap_bytes)
        throw std::runtime_error("sieve: table needs " + std::to_string(table_bytes) +
                                 " bytes, over the memory cap of " +
                                 std::to_string(cfg.memory_cap_bytes) +
                                 " (set LIOUVILLE_MEMORY_CAP to raise it)");
    const std::uint64_t base_bytes = (base_limit + 1) * sizeof(std::uint32_t);
    if (base_bytes > cfg.memory_cap_bytes)
        throw std::runtime_error("sieve: base prime sieve to " + std::to_string(base_limit) +
                                 " needs " + std::to_string(base_bytes) +
                                 " bytes, over the memory cap");
}

// Liouville parity for one segment. rem starts at n; every prime power
// p^j <= seg_hi (p <= sqrt(seg_hi)) divides its multiples by p once and
// flips parity, leaving rem = 1 or one prime > sqrt(seg_hi).
void fill_lambda_segment(std::uint64_t seg_lo, std::uint64_t seg_hi,
                         const std::vector<std::uint32_t>& primes,
                         std::vector<std::uint64_t>& rem, std::vector<std::uint8_t>& parity) {
    const std::size_t width = static_cast<std::size_t>(seg_hi - seg_lo + 1);
    for (std::size_t i = 0; i < width; ++i) {
        rem[i] = seg_lo + i;
        parity[i] = 0;
    }
    for (std::uint32_t p : primes) {
        if (std::uint64_t{p} * p > seg_hi) break;
        for (std::uint64_t pw = p;;) {
            for (std::uint64_t m = first_multiple_at_least(seg_lo, pw); m <= seg_hi; m += pw) {
                const std::size_t i = static_cast<std::size_t>(m - seg_lo);
                rem[i] /= p;
                parity[i] ^= 1;
            }
            if (pw > seg_hi / p) break;
            pw *= p;
        }
    }
    for (std::size_t i = 0; i < width; ++i)
        if (rem[i] > 1) parity[i] ^= 1;
}

// Mobius values for one segment: one division + parity flip per distinct
// prime, square multiples flagged zero. val: 0 -> 0, 1 -> +1, 2 -> -1.
void fill_mobius_segment(std::uint64_t seg_lo, std::uint64_t seg_hi,
                         const std::vector<std::uint32_t>& primes,
                         std::vector<std::uint64_t>& rem, std::vector<std::uint8_t>& parity,
                         std::vector<std::uint8_t>& zero) {
    const std::size_t width = static_cast<std::size_t>(seg_hi - seg_lo + 1);
    for (std::size_t i = 0; i < width; ++i) {
        rem[i] = seg_lo + i;
        parity[i] = 0;
        zero[i] = 0;
    }
    for (std::uint32_t p : primes) {
        const std::uint64_t p2 = std::uint64_t{p} * p;
        if (p2 > seg_hi) break;
        for (std::uint64_t m = first_multiple_at_least(seg_lo, p); m <= seg_hi; m += p) {
            const std::size_t i = static_cast<std::size_t>(m - seg_lo);
            rem[i] /= p;
            parity[i] ^= 1;
        }
        for (std::uint64_t m = first_multiple_at_least(seg_lo, p2); m <= seg_hi; m += p2)
            zero[static_cast<std::size_t>(m - seg_lo)] = 1;
    }
    for (std::size_t i = 0; i < width; ++i)
        if (!zero[i] && rem[i] > 1) parity[i] ^= 1;
}

// Runs `body(segment_index)` over all segments with cfg.worker_count
// threads. Segments are word-aligned and disjoint, so workers never touch
// the same output word and the merged result is schedule-independent.
template <typename Body>
void run_segments(std::uint64_t segment_count, unsigned workers, const Body& body) {
    if (workers <= 1 || segment_count <= 1) {
        for (std::uint64_t s = 0; s < segment_count; ++s) body(s);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    const unsigned n = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, segment_count));
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t s = next.fetch_add(1); s < segment_count; s = next.fetch_add(1))
                body(s);
        });
    }
    for (auto& th : pool) th.join();
}

std::uint64_t segment_entries(const SieveConfig& cfg) {
    const std::uint64_t wanted = std::max<std::uint64_t>(cfg.segment_length, 64);
    return (wanted + 63) / 64 * 64;
}

void put_u16(std::ofstream& out, std::uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    out.write(b, 2);
}

void put_u64(std::ofstream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

std::uint16_t get_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

}  // namespace

std::uint64_t SieveConfig::default_memory_cap() {
    if (const char* env = std::getenv("LIOUVILLE_MEMORY_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultCap;
}

void SieveConfig::validate() const {
    if (segment_length < 2) throw std::invalid_argument("SieveConfig: segment_length must be >= 2");
    if (worker_count < 1) throw std::invalid_argument("SieveConfig: worker_count must be >= 1");
    if (memory_cap_bytes < 1) throw std::invalid_argument("SieveConfig: memory cap must be >= 1");
}

int liouville_point(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("liouville_point: n must be >= 1");
    if (n > kMaxPoint) throw std::invalid_argument("liouville_point: n must be <= 2^63 - 1");
    unsigned omega = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++omega;
    }
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        while (n % d == 0) {
            n /= d;
            ++omega;
        }
    }
    if (n > 1) ++omega;
    return (omega & 1) ? -1 : 1;
}

int mobius_point(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("mobius_point: n must be >= 1");
    unsigned omega = 0;
    if (n % 2 == 0) {
        n /= 2;
        if (n % 2 == 0) return 0;
        ++omega;
    }
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            ++omega;
        }
    }
    if (n > 1) ++omega;
    return (omega & 1) ? -1 : 1;
}

SignTable::SignTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words)
    : lo_(lo), hi_(hi), words_(std::move(words)) {
    if (lo < 1 || lo > hi) throw std::invalid_argument("SignTable: require 1 <= lo <= hi");
    const std::uint64_t need = (size() + 63) / 64;
    if (words_.size() != need)
        throw std::invalid_argument("SignTable: word count does not match range");
    if (size() & 63) words_.back() &= ~std::uint64_t{0} >> (64 - (size() & 63));
}

bool SignTable::is_plus(std::uint64_t n) const {
    if (n < lo_ || n > hi_) throw std::out_of_range("SignTable: index outside [lo, hi]");
    const std::uint64_t i = n - lo_;
    return (words_[i >> 6] >> (i & 63)) & 1;
}

int SignTable::sign(std::uint64_t n) const { return is_plus(n) ? 1 : -1; }

std::uint64_t SignTable::word_at(std::uint64_t n) const {
    if (n < lo_ || n > hi_) throw std::out_of_range("SignTable: word_at outside [lo, hi]");
    const std::uint64_t i = n - lo_;
    const std::uint64_t q = i >> 6;
    const unsigned r = static_cast<unsigned>(i & 63);
    std::uint64_t w = words_[q] >> r;
    if (r != 0 && q + 1 < words_.size()) w |= words_[q + 1] << (64 - r);
    return w;
}

std::uint64_t SignTable::count_plus(std::uint64_t from, std::uint64_t to) const {
    if (!covers(from, to)) throw std::out_of_range("SignTable: count_plus outside [lo, hi]");
    const std::uint64_t a = from - lo_;
    const std::uint64_t b = to - lo_;  // inclusive
    const std::uint64_t qa = a >> 6, qb = b >> 6;
    const std::uint64_t head = ~std::uint64_t{0} << (a & 63);
    const std::uint64_t tail = ~std::uint64_t{0} >> (63 - (b & 63));
    if (qa == qb) return std::popcount(words_[qa] & head & tail);
    std::uint64_t total = std::popcount(words_[qa] & head);
    for (std::uint64_t q = qa + 1; q < qb; ++q) total += std::popcount(words_[q]);
    return total + std::popcount(words_[qb] & tail);
}

MobiusTable::MobiusTable(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t> words)
    : lo_(lo), hi_(hi), words_(std::move(words)) {
    if (lo < 1 || lo > hi) throw std::invalid_argument("MobiusTable: require 1 <= lo <= hi");
    const std::uint64_t need = (size() + 31) / 32;
    if (words_.size() != need)
        throw std::invalid_argument("MobiusTable: word count does not match range");
    if (size() & 31) words_.back() &= ~std::uint64_t{0} >> (64 - 2 * (size() & 31));
}

int MobiusTable::value(std::uint64_t n) const {
    if (n < lo_ || n > hi_) throw std::out_of_range("MobiusTable: index outside [lo, hi]");
    const std::uint64_t i = n - lo_;
    const unsigned code = (words_[i >> 5] >> (2 * (i & 31))) & 3;
    return code == 0 ? 0 : (code == 1 ? 1 : -1);
}

SignTable sieve_liouville(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg) {
    cfg.validate();
    if (lo < 1 || lo > hi) throw std::invalid_argument("sieve_liouville: require 1 <= lo <= hi");
    if (hi > kMaxPoint) throw std::invalid_argument("sieve_liouville: hi must be <= 2^63 - 1");
    const std::uint64_t len = hi - lo + 1;
    const std::uint64_t n_words = (len + 63) / 64;
    const std::uint64_t base_limit = isqrt(hi);
    check_memory(cfg, n_words * 8, base_limit);

    const auto primes = primes_up_to(base_limit);
    std::vector<std::uint64_t> words(n_words, 0);

    const std::uint64_t seg = segment_entries(cfg);
    const std::uint64_t segment_count = (len + seg - 1) / seg;

    run_segments(segment_count, cfg.worker_count, [&](std::uint64_t s) {
        thread_local std::vector<std::uint64_t> rem;
        thread_local std::vector<std::uint8_t> parity;
        const std::uint64_t first = s * seg;                       // bit index
        const std::uint64_t last = std::min(first + seg, len) - 1;  // bit index
        const std::uint64_t seg_lo = lo + first;
        const std::uint64_t seg_hi = lo + last;
        const std::size_t width = static_cast<std::size_t>(last - first + 1);
        if (rem.size() < width) {
            rem.resize(width);
            parity.resize(width);
        }
        fill_lambda_segment(seg_lo, seg_hi, primes, rem, parity);
        for (std::size_t i = 0; i < width; ++i) {
            if (parity[i] == 0) {  // even Omega -> lambda = +1
                const std::uint64_t bit = first + i;
                words[bit >> 6] |= std::uint64_t{1} << (bit & 63);
            }
        }
    });
    return SignTable(lo, hi, std::move(words));
}

MobiusTable sieve_mobius(std::uint64_t lo, std::uint64_t hi, const SieveConfig& cfg) {
    cfg.validate();
    if (lo < 1 || lo > hi) throw std::invalid_argument("sieve_mobius: require 1 <= lo <= hi");
    if (hi > kMaxPoint) throw std::invalid_argument("sieve_mobius: hi must be <= 2^63 - 1");
    const std::uint64_t len = hi - lo + 1;
    const std::uint64_t n_words = (len + 31) / 32;
    const std::uint64_t base_limit = isqrt(hi);
    check_memory(cfg, n_words * 8, base_limit);

    const auto primes = primes_up_to(base_limit);
    std::vector<std::uint64_t> words(n_words, 0);

    const std::uint64_t seg = segment_entries(cfg);
    const std::uint64_t segment_count = (len + seg - 1) / seg;

    run_segments(segment_count, cfg.worker_count, [&](std::uint64_t s) {
        thread_local std::vector<std::uint64_t> rem;
        thread_local std::vector<std::uint8_t> parity;
        thread_local std::vector<std::uint8_t> zero;
        const std::uint64_t first = s * seg;
        const std::uint64_t last = std::min(first + seg, len) - 1;
        const std::uint64_t seg_lo = lo + first;
        const std::uint64_t seg_hi = lo + last;
        const std::size_t width = static_cast<std::size_t>(last - first + 1);
        if (rem.size() < width) {
            rem.resize(width);
            parity.resize(width);
            zero.resize(width);
        }
        fill_mobius_segment(seg_lo, seg_hi, primes, rem, parity, zero);
        for (std::size_t i = 0; i < width; ++i) {
            if (zero[i]) continue;
            const std::uint64_t entry = first + i;
            const std::uint64_t code = parity[i] ? 2 : 1;
            words[entry >> 5] |= code << (2 * (entry & 31));
        }
    });
    return MobiusTable(lo, hi, std::move(words));
}

void save_sign_table(const SignTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("save_sign_table: cannot open " + path);
    out.write("LIOU", 4);
    put_u16(out, 1);  // version
    put_u16(out, 0);  // reserved
    put_u64(out, table.lo());
    put_u64(out, table.hi());
    const std::uint64_t n_bytes = (table.size() + 7) / 8;
    const auto& words = table.words();
    for (std::uint64_t i = 0; i < n_bytes; ++i)
        out.put(static_cast<char>((words[i >> 3] >> (8 * (i & 7))) & 0xff));
    if (!out) throw std::runtime_error("save_sign_table: write failed for " + path);
}

SignTable load_sign_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_sign_table: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "LIOU")
        throw std::runtime_error("load_sign_table: bad magic in " + path);
    const std::uint16_t version = get_u16(in);
    get_u16(in);  // reserved
    if (version != 1)
        throw std::runtime_error("load_sign_table: unsupported version " + std::to_string(version));
    const std::uint64_t lo = get_u64(in);
    const std::uint64_t hi = get_u64(in);
    if (!in || lo < 1 || lo > hi) throw std::runtime_error("load_sign_table: bad range header");
    const std::uint64_t len = hi - lo + 1;
    const std::uint64_t n_bytes = (len + 7) / 8;
    std::vector<std::uint64_t> words((len + 63) / 64, 0);
    for (std::uint64_t i = 0; i < n_bytes; ++i) {
        const int ch = in.get();
        if (ch == EOF) throw std::runtime_error("load_sign_table: truncated file " + path);
        words[i >> 3] |= std::uint64_t{static_cast<unsigned char>(ch)} << (8 * (i & 7));
    }
    if (in.get() != EOF) throw std::runtime_error("load_sign_table: trailing bytes in " + path);
    if (len & 63) words.back() &= ~std::uint64_t{0} >> (64 - (len & 63));
    return SignTable(lo, hi, std::move(words));
}

}  // namespace liouville
