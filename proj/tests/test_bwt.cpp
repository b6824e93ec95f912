#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "rws/bwt.hpp"
#include "rws/errors.hpp"
#include "rws/machine.hpp"
#include "rws/oracles.hpp"

namespace {

using rws::SymString;

rws::StreamMachine make_machine(uint64_t memory_bits = 1ull << 20) {
    rws::MachineBudget b;
    b.memory_bits = memory_bits;
    b.max_streams = 2;
    return rws::StreamMachine(b);
}

SymString from_chars(const char* text) {
    SymString s;
    for (const char* p = text; *p; ++p) s.push_back(static_cast<rws::Symbol>(*p - 'a'));
    return s;
}

SymString random_string(std::mt19937_64& rng, uint64_t n, uint32_t sigma) {
    SymString s(n);
    for (auto& v : s) v = static_cast<rws::Symbol>(rng() % sigma);
    return s;
}

}  // namespace

TEST_SUITE("bwt") {

TEST_CASE("transform of banana") {
    rws::StreamMachine m = make_machine();
    const SymString banana = {1, 0, 2, 0, 2, 0};  // b a n a n a
    // Last column of the sorted suffixes of banana$: annb$aa.
    const SymString expect = {0, 2, 2, 1, 3, 0, 0};
    CHECK(rws::bwt_forward(m, banana, 3) == expect);
    CHECK(rws::bwt_rotation_oracle(banana, 3) == expect);
    CHECK(rws::bwt_logspace_oracle(banana, 3) == expect);

    m.reset();
    CHECK(rws::suffix_array_streams(m, banana, 3) ==
          std::vector<uint32_t>{7, 6, 4, 2, 1, 5, 3});

    m.reset();
    CHECK(rws::bwt_inverse(m, expect, 3) == banana);
}

TEST_CASE("transform of tiny strings") {
    rws::StreamMachine m = make_machine();
    CHECK(rws::bwt_forward(m, {}, 2) == SymString{2});
    m.reset();
    CHECK(rws::bwt_inverse(m, {2}, 2).empty());
    m.reset();
    CHECK(rws::bwt_forward(m, {0}, 2) == SymString{0, 2});
    m.reset();
    CHECK(rws::bwt_forward(m, from_chars("aba"), 2) == SymString{0, 1, 2, 0});
}

TEST_CASE("machine route agrees with both oracles on all short ternary strings") {
    rws::StreamMachine m = make_machine();
    for (uint32_t len = 0; len <= 8; ++len) {
        uint64_t total = 1;
        for (uint32_t i = 0; i < len; ++i) total *= 3;
        for (uint64_t code = 0; code < total; ++code) {
            SymString s(len);
            uint64_t c = code;
            for (uint32_t i = 0; i < len; ++i) {
                s[i] = static_cast<rws::Symbol>(c % 3);
                c /= 3;
            }
            m.reset();
            const SymString t = rws::bwt_forward(m, s, 3);
            REQUIRE(t == rws::bwt_rotation_oracle(s, 3));
            REQUIRE(t == rws::bwt_logspace_oracle(s, 3));
            m.reset();
            REQUIRE(rws::suffix_array_streams(m, s, 3) == rws::suffix_array_oracle(s, 3));
            m.reset();
            REQUIRE(rws::bwt_inverse(m, t, 3) == s);
        }
    }
}

TEST_CASE("the inverse accepts exactly the true transform images") {
    rws::StreamMachine m = make_machine();

    // Enumerate the images of every binary string of length 3.
    std::set<SymString> images;
    for (uint64_t code = 0; code < 8; ++code) {
        SymString s(3);
        for (uint32_t i = 0; i < 3; ++i) s[i] = (code >> i) & 1u;
        m.reset();
        images.insert(rws::bwt_forward(m, s, 2));
    }
    REQUIRE(images.size() == 8);
    CHECK(images.count(SymString{0, 1, 2, 0}) == 1);  // ab$a, the image of aba

    // Every other sentinel-bearing candidate of length 4 must be rejected.
    uint64_t rejected = 0;
    for (uint32_t pos = 0; pos < 4; ++pos) {
        for (uint64_t code = 0; code < 8; ++code) {
            SymString t(4);
            uint64_t c = code;
            for (uint32_t i = 0; i < 4; ++i) {
                if (i == pos) {
                    t[i] = 2;
                } else {
                    t[i] = c & 1u;
                    c >>= 1;
                }
            }
            m.reset();
            if (images.count(t)) {
                const SymString s = rws::bwt_inverse(m, t, 2);
                m.reset();
                REQUIRE(rws::bwt_forward(m, s, 2) == t);
            } else {
                REQUIRE_THROWS_AS(rws::bwt_inverse(m, t, 2), rws::InvalidInputError);
                ++rejected;
            }
        }
    }
    CHECK(rejected == 24);

    m.reset();
    CHECK_THROWS_AS(rws::bwt_inverse(m, {1, 0, 2, 0}, 2), rws::InvalidInputError);  // ba$a
    m.reset();
    CHECK_THROWS_AS(rws::bwt_inverse(m, {2, 0, 0, 1}, 2), rws::InvalidInputError);  // $aab
}

TEST_CASE("the inverse rejects malformed inputs outright") {
    rws::StreamMachine m = make_machine();
    CHECK_THROWS_AS(rws::bwt_inverse(m, {}, 2), rws::InvalidInputError);
    CHECK_THROWS_AS(rws::bwt_inverse(m, {0, 1, 0}, 2), rws::InvalidInputError);   // no sentinel
    CHECK_THROWS_AS(rws::bwt_inverse(m, {2, 2, 0}, 2), rws::InvalidInputError);   // two sentinels
    CHECK_THROWS_AS(rws::bwt_inverse(m, {0, 3, 2}, 2), rws::InvalidInputError);   // bad symbol
    CHECK_THROWS_AS(rws::bwt_inverse(m, {0, 2}, 0), rws::InvalidInputError);      // empty alphabet
}

TEST_CASE("medium random strings round trip and match the oracles") {
    std::mt19937_64 rng(21);
    rws::StreamMachine m = make_machine();
    for (uint32_t sigma : {2u, 5u, 256u}) {
        const uint64_t n = sigma == 2 ? 2000 : 1500;
        const SymString s = random_string(rng, n, sigma);
        m.reset();
        const SymString t = rws::bwt_forward(m, s, sigma);
        CHECK(t == rws::bwt_rotation_oracle(s, sigma));
        if (sigma == 2) CHECK(t == rws::bwt_logspace_oracle(s, sigma));
        m.reset();
        CHECK(rws::bwt_inverse(m, t, sigma) == s);
    }
}

TEST_CASE("repetitive strings exercise the deep doubling rounds") {
    rws::StreamMachine m = make_machine();
    SymString unary(4096, 0);
    const SymString t = rws::bwt_forward(m, unary, 2);
    CHECK(t == rws::bwt_rotation_oracle(unary, 2));
    m.reset();
    CHECK(rws::bwt_inverse(m, t, 2) == unary);

    SymString alt(2048);
    for (size_t i = 0; i < alt.size(); ++i) alt[i] = i & 1u;
    m.reset();
    const SymString t2 = rws::bwt_forward(m, alt, 2);
    CHECK(t2 == rws::bwt_rotation_oracle(alt, 2));
    m.reset();
    CHECK(rws::bwt_inverse(m, t2, 2) == alt);
}

TEST_CASE("orbit listing by pointer doubling") {
    rws::StreamMachine m = make_machine();
    CHECK(rws::rank_permutation(m, {}) == std::vector<uint32_t>{});
    m.reset();
    CHECK(rws::rank_permutation(m, {1}) == std::vector<uint32_t>{1});
    m.reset();
    CHECK(rws::rank_permutation(m, {2, 3, 1}) == std::vector<uint32_t>{1, 2, 3});
    m.reset();
    // The cycle of element 1 has length 2; the orbit repeats it cyclically.
    CHECK(rws::rank_permutation(m, {2, 1, 4, 3}) == std::vector<uint32_t>{1, 2, 1, 2});
    m.reset();
    CHECK(rws::rank_permutation(m, {1, 2, 3, 4}) == std::vector<uint32_t>{1, 1, 1, 1});

    std::mt19937_64 rng(22);
    for (uint64_t n : {2ull, 17ull, 100ull, 500ull}) {
        std::vector<uint32_t> pi(n);
        for (uint64_t i = 0; i < n; ++i) pi[i] = static_cast<uint32_t>(i + 1);
        std::shuffle(pi.begin(), pi.end(), rng);
        m.reset();
        CHECK(rws::rank_permutation(m, pi) == rws::orbit_oracle(pi));
    }
}

TEST_CASE("orbit listing rejects non-permutations") {
    rws::StreamMachine m = make_machine();
    CHECK_THROWS_AS(rws::rank_permutation(m, {1, 1, 3}), rws::InvalidInputError);
    m.reset();
    CHECK_THROWS_AS(rws::rank_permutation(m, {0, 2, 1}), rws::InvalidInputError);
    m.reset();
    CHECK_THROWS_AS(rws::rank_permutation(m, {2, 3, 4}), rws::InvalidInputError);
}

TEST_CASE("entropy-only pipeline round trips") {
    std::mt19937_64 rng(23);
    rws::StreamMachine m = make_machine();
    for (uint32_t sigma : {2u, 3u, 256u}) {
        for (uint64_t n : {0ull, 1ull, 100ull, 5000ull}) {
            const SymString s = random_string(rng, n, sigma);
            m.reset();
            const std::vector<uint8_t> container = rws::entropy_only_compress(m, s, sigma);
            REQUIRE(container.size() >= 15);
            CHECK(container[0] == 'R');
            CHECK(container[1] == 'W');
            CHECK(container[2] == 'S');
            CHECK(container[3] == 'E');
            CHECK(container[4] == 1);
            m.reset();
            CHECK(rws::entropy_only_decompress(m, container) == s);
        }
    }
}

TEST_CASE("entropy-only pipeline compresses repetitive input") {
    rws::StreamMachine m = make_machine();
    SymString s;
    for (int i = 0; i < 4096; ++i) {
        s.push_back(0);
        s.push_back(1);
    }
    const std::vector<uint8_t> container = rws::entropy_only_compress(m, s, 2);
    CHECK(container.size() * 8 < s.size() / 4);
    m.reset();
    CHECK(rws::entropy_only_decompress(m, container) == s);
}

TEST_CASE("entropy-only container is validated") {
    rws::StreamMachine m = make_machine();
    const SymString s = from_chars("abracadabra");
    std::vector<uint8_t> good = rws::entropy_only_compress(m, s, 18);

    std::vector<uint8_t> bad = good;
    bad[0] = 'X';
    m.reset();
    CHECK_THROWS_AS(rws::entropy_only_decompress(m, bad), rws::FormatError);

    bad = good;
    bad[4] = 9;
    m.reset();
    CHECK_THROWS_AS(rws::entropy_only_decompress(m, bad), rws::FormatError);

    m.reset();
    CHECK_THROWS_AS(rws::entropy_only_decompress(m, {'R', 'W', 'S', 'E', 1}),
                    rws::FormatError);
}

TEST_CASE("oversized inputs are refused") {
    rws::StreamMachine m = make_machine();
    SymString big(rws::kMaxMachineBwtLength + 1, 0);
    CHECK_THROWS_AS(rws::bwt_forward(m, big, 2), rws::BudgetError);
}

}  // TEST_SUITE
