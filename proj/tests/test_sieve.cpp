#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "liouville/sieve.hpp"
#include "oracles.hpp"

using namespace liouville;

namespace {

SieveConfig quick_config() {
    SieveConfig cfg;
    cfg.worker_count = 2;
    return cfg;
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) : path("liouville_test_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("liouville_point on the small examples") {
    CHECK(liouville_point(1) == 1);   // empty product
    CHECK(liouville_point(2) == -1);  // prime
    CHECK(liouville_point(9) == 1);
    CHECK(liouville_point(12) == -1);  // 2^2 * 3
    CHECK(liouville_point(100000) == 1);  // 2^5 * 5^5
    CHECK_THROWS_AS(liouville_point(0), std::invalid_argument);
}

TEST_CASE("mobius_point on the small examples") {
    CHECK(mobius_point(1) == 1);
    CHECK(mobius_point(4) == 0);
    CHECK(mobius_point(6) == 1);
    CHECK(mobius_point(30) == -1);
    CHECK_THROWS_AS(mobius_point(0), std::invalid_argument);
}

TEST_CASE("liouville is completely multiplicative") {
    oracle::Lcg rng(20240901);
    for (int i = 0; i < 40; ++i) {
        const std::uint64_t m = rng.next_in(2, 1'000'000);
        const std::uint64_t n = rng.next_in(2, 1'000'000);
        CHECK(liouville_point(m * n) == liouville_point(m) * liouville_point(n));
    }
}

TEST_CASE("liouville of perfect squares is +1") {
    oracle::Lcg rng(7);
    for (int i = 0; i < 30; ++i) {
        const std::uint64_t n = rng.next_in(1, 1'000'000);
        CHECK(liouville_point(n * n) == 1);
    }
}

TEST_CASE("sieve_liouville matches the examples") {
    const SignTable table = sieve_liouville(1, 10, quick_config());
    const int expected[10] = {1, -1, -1, 1, -1, 1, -1, -1, 1, 1};
    for (std::uint64_t n = 1; n <= 10; ++n) CHECK(table.sign(n) == expected[n - 1]);

    const SignTable one = sieve_liouville(1, 1, quick_config());
    CHECK(one.sign(1) == 1);
    CHECK(one.size() == 1);

    const SignTable point = sieve_liouville(100000, 100000, quick_config());
    CHECK(point.sign(100000) == 1);
}

TEST_CASE("sieve agrees with point evaluation on [1, 10^4]") {
    const SignTable table = sieve_liouville(1, 10'000, quick_config());
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        REQUIRE(table.sign(n) == oracle::lambda_of(n));
    }
}

TEST_CASE("sieve agrees with point evaluation on sampled large ranges") {
    const SignTable low = sieve_liouville(1, 1'000'000, quick_config());
    oracle::Lcg rng(99);
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t n = rng.next_in(1, 1'000'000);
        CHECK(low.sign(n) == oracle::lambda_of(n));
    }

    const std::uint64_t lo = 1'000'000'001;
    const SignTable high = sieve_liouville(lo, lo + 50'000, quick_config());
    for (int i = 0; i < 60; ++i) {
        const std::uint64_t n = rng.next_in(lo, lo + 50'000);
        CHECK(high.sign(n) == oracle::lambda_of(n));
    }
}

TEST_CASE("sieve_mobius matches point evaluation and the examples") {
    const MobiusTable table = sieve_mobius(1, 10'000, quick_config());
    const int expected[4] = {1, -1, -1, 0};
    for (std::uint64_t n = 1; n <= 4; ++n) CHECK(table.value(n) == expected[n - 1]);
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        REQUIRE(table.value(n) == oracle::mobius_of(n));
    }

    const MobiusTable one = sieve_mobius(1, 1, quick_config());
    CHECK(one.value(1) == 1);

    const MobiusTable narrow = sieve_mobius(2, 10, quick_config());
    for (std::uint64_t n = 2; n <= 10; ++n) CHECK(narrow.value(n) == oracle::mobius_of(n));
}

TEST_CASE("sieve output is identical across worker counts and segment lengths") {
    SieveConfig base;
    base.worker_count = 1;
    const SignTable reference = sieve_liouville(1, 300'000, base);
    for (const unsigned workers : {2u, 3u, 8u}) {
        for (const std::uint64_t seg : {64ull, 1000ull, 4096ull, 1ull << 22}) {
            SieveConfig cfg;
            cfg.worker_count = workers;
            cfg.segment_length = seg;
            const SignTable other = sieve_liouville(1, 300'000, cfg);
            REQUIRE(other.words() == reference.words());
        }
    }
    const MobiusTable mref = sieve_mobius(1, 100'000, base);
    SieveConfig cfg;
    cfg.worker_count = 8;
    cfg.segment_length = 999;
    const MobiusTable mtab = sieve_mobius(1, 100'000, cfg);
    CHECK(mtab.words() == mref.words());
}

TEST_CASE("sieve validates its range and the memory cap") {
    CHECK_THROWS_AS(sieve_liouville(0, 10), std::invalid_argument);
    CHECK_THROWS_AS(sieve_liouville(10, 5), std::invalid_argument);
    CHECK_THROWS_AS(sieve_mobius(0, 10), std::invalid_argument);

    SieveConfig tiny;
    tiny.memory_cap_bytes = 1024;
    CHECK_THROWS_AS(sieve_liouville(1, 100'000'000, tiny), std::runtime_error);
    CHECK_THROWS_AS(sieve_mobius(1, 100'000'000, tiny), std::runtime_error);

    SieveConfig bad;
    bad.worker_count = 0;
    CHECK_THROWS_AS(sieve_liouville(1, 10, bad), std::invalid_argument);
}

TEST_CASE("table accessors enforce their bounds") {
    const SignTable table = sieve_liouville(10, 20, quick_config());
    CHECK_THROWS_AS(table.sign(9), std::out_of_range);
    CHECK_THROWS_AS(table.sign(21), std::out_of_range);
    CHECK(table.covers(10, 20));
    CHECK_FALSE(table.covers(1, 20));
    CHECK(table.count_plus(10, 20) + 0 == [&] {
        std::uint64_t plus = 0;
        for (std::uint64_t n = 10; n <= 20; ++n) plus += table.is_plus(n) ? 1 : 0;
        return plus;
    }());
}

TEST_CASE("count_plus agrees with bitwise scan on odd boundaries") {
    const SignTable table = sieve_liouville(1, 2000, quick_config());
    oracle::Lcg rng(5);
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t a = rng.next_in(1, 2000);
        const std::uint64_t b = rng.next_in(a, 2000);
        std::uint64_t expected = 0;
        for (std::uint64_t n = a; n <= b; ++n) expected += table.is_plus(n) ? 1 : 0;
        REQUIRE(table.count_plus(a, b) == expected);
    }
}

TEST_CASE("sign table dump uses the documented layout and round-trips") {
    const SignTable table = sieve_liouville(1, 10, quick_config());
    TempPath tmp("dump.bin");
    save_sign_table(table, tmp.path);

    std::ifstream in(tmp.path, std::ios::binary);
    REQUIRE(in.good());
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    REQUIRE(bytes.size() == 24 + 2);  // header + 10 bits -> 2 bytes
    CHECK(bytes[0] == 'L');
    CHECK(bytes[1] == 'I');
    CHECK(bytes[2] == 'O');
    CHECK(bytes[3] == 'U');
    CHECK(bytes[4] == 1);  // version, little-endian
    CHECK(bytes[5] == 0);
    CHECK(bytes[6] == 0);  // reserved
    CHECK(bytes[7] == 0);
    CHECK(bytes[8] == 1);  // lo = 1
    for (int i = 9; i < 16; ++i) CHECK(bytes[i] == 0);
    CHECK(bytes[16] == 10);  // hi = 10
    for (int i = 17; i < 24; ++i) CHECK(bytes[i] == 0);
    // +--+-+-- -> LSB-first 0x29, then ++ -> 0x03
    CHECK(bytes[24] == 0x29);
    CHECK(bytes[25] == 0x03);

    const SignTable loaded = load_sign_table(tmp.path);
    CHECK(loaded.lo() == table.lo());
    CHECK(loaded.hi() == table.hi());
    CHECK(loaded.words() == table.words());
}

TEST_CASE("sign table load rejects corrupt files") {
    TempPath tmp("bad.bin");
    {
        std::ofstream out(tmp.path, std::ios::binary);
        out << "NOPE this is not a table";
    }
    CHECK_THROWS_AS(load_sign_table(tmp.path), std::runtime_error);
    CHECK_THROWS_AS(load_sign_table("does_not_exist_at_all.bin"), std::runtime_error);

    // Truncated payload.
    const SignTable table = sieve_liouville(1, 1000, quick_config());
    save_sign_table(table, tmp.path);
    {
        std::ifstream in(tmp.path, std::ios::binary);
        std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        data.resize(data.size() - 7);
        std::ofstream out(tmp.path, std::ios::binary | std::ios::trunc);
        out << data;
    }
    CHECK_THROWS_AS(load_sign_table(tmp.path), std::runtime_error);
}

TEST_CASE("memory cap honors the environment override") {
    // The default cap reads LIOUVILLE_MEMORY_CAP at SieveConfig construction.
    CHECK(SieveConfig::default_memory_cap() >= 1);
}
