#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "rws/bits.hpp"
#include "rws/errors.hpp"
#include "rws/machine.hpp"
#include "rws/oracles.hpp"
#include "rws/period_grammar.hpp"

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

SymString repeat_to(const SymString& base, uint64_t n) {
    SymString s;
    s.reserve(n);
    while (s.size() < n) s.push_back(base[s.size() % base.size()]);
    return s;
}

}  // namespace

TEST_SUITE("period_grammar") {

TEST_CASE("smallest periods of known strings") {
    CHECK(rws::min_period_oracle({}) == 0);
    CHECK(rws::min_period_oracle(from_chars("a")) == 1);
    CHECK(rws::min_period_oracle(from_chars("aaaa")) == 1);
    CHECK(rws::min_period_oracle(from_chars("abab")) == 2);
    CHECK(rws::min_period_oracle(from_chars("ababa")) == 2);
    CHECK(rws::min_period_oracle(from_chars("aabaab")) == 3);
    CHECK(rws::min_period_oracle(from_chars("abcd")) == 4);
    CHECK(rws::min_period_oracle(from_chars("aab")) == 3);
    CHECK(rws::min_period_oracle(from_chars("aba")) == 2);
    CHECK(rws::min_period_oracle(from_chars("abaab")) == 3);
    CHECK(rws::min_period_oracle(from_chars("aabab")) == 5);
    CHECK(rws::min_period_oracle(from_chars("abcabcab")) == 3);
    CHECK(rws::min_period_oracle(from_chars("aabaa")) == 3);
}

TEST_CASE("failure-function route equals the direct scan on all short binary strings") {
    for (uint32_t len = 1; len <= 12; ++len) {
        for (uint64_t code = 0; code < (1ull << len); ++code) {
            SymString s(len);
            for (uint32_t i = 0; i < len; ++i) s[i] = (code >> i) & 1u;
            REQUIRE(rws::min_period_oracle(s) == rws::period_naive(s));
        }
    }
}

TEST_CASE("stream route equals the oracle on all short binary strings") {
    rws::StreamMachine m = make_machine();
    for (uint32_t len = 1; len <= 12; ++len) {
        for (uint64_t code = 0; code < (1ull << len); ++code) {
            SymString s(len);
            for (uint32_t i = 0; i < len; ++i) s[i] = (code >> i) & 1u;
            m.reset();
            REQUIRE(rws::min_period_streams(m, s, 2) == rws::min_period_oracle(s));
        }
    }
}

TEST_CASE("stream route handles longer planted periods") {
    rws::StreamMachine m = make_machine();
    CHECK(rws::min_period_streams(m, repeat_to(from_chars("ab"), 4096), 2) == 2);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const uint64_t p = 1 + rng() % 64;
        SymString base(p);
        for (auto& v : base) v = rng() & 1u;
        const uint64_t n = p + rng() % 3000;
        const SymString s = repeat_to(base, n);
        m.reset();
        REQUIRE(rws::min_period_streams(m, s, 2) == rws::min_period_oracle(s));
    }

    m.reset();
    CHECK(rws::min_period_streams(m, {}, 2) == 0);
    m.reset();
    CHECK(rws::min_period_streams(m, {1}, 2) == 1);
}

TEST_CASE("periodic grammar for a constant string") {
    const SymString s = from_chars("aaaa");
    const rws::Grammar g = rws::build_periodic_grammar(s, 2, 1);
    CHECK(g.productions.size() == 6);
    CHECK(rws::expand_grammar(g) == s);
}

TEST_CASE("periodic grammars expand back to their strings") {
    const SymString ab8 = repeat_to(from_chars("ab"), 16);
    const rws::Grammar g1 = rws::build_periodic_grammar(ab8, 2, 2);
    CHECK(rws::expand_grammar(g1) == ab8);

    const SymString abcab = from_chars("abcab");  // period 3 with a tail
    const rws::Grammar g2 = rws::build_periodic_grammar(abcab, 3, 3);
    CHECK(rws::expand_grammar(g2) == abcab);
    CHECK(g2.productions[2].rhs.size() == 2);  // tail "ab"

    const rws::Grammar g3 = rws::build_periodic_grammar({}, 2, 0);
    CHECK(rws::expand_grammar(g3).empty());

    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const uint64_t p = 1 + rng() % 20;
        SymString base(p);
        for (auto& v : base) v = static_cast<rws::Symbol>(rng() % 3);
        const uint64_t n = p + rng() % 2000;
        const SymString s = repeat_to(base, n);
        const uint64_t ell = rws::min_period_oracle(s);
        const rws::Grammar g = rws::build_periodic_grammar(s, 3, ell);
        REQUIRE(rws::expand_grammar(g) == s);
    }
}

TEST_CASE("grammar size in bits") {
    rws::Grammar g;
    g.sigma = 2;
    g.productions.resize(1);
    g.productions[0].rhs = {{true, 0}, {true, 1}, {true, 0}};
    CHECK(rws::grammar_size_bits(g) == 3 * rws::ceil_log2(1 + 2));

    // (ab)^(2^16): 37 right-hand-side items, 20 + 2 names -> 5 bits each.
    const SymString big = repeat_to(from_chars("ab"), 1ull << 17);
    const rws::Grammar gb = rws::build_periodic_grammar(big, 2, 2);
    CHECK(gb.productions.size() == 20);
    CHECK(rws::grammar_size_bits(gb) == 37 * 5);
    CHECK(rws::expand_grammar(gb) == big);
}

TEST_CASE("grammar construction validates the period") {
    CHECK_THROWS_AS(rws::build_periodic_grammar(from_chars("abab"), 2, 3),
                    rws::InvalidInputError);
    CHECK_THROWS_AS(rws::build_periodic_grammar(from_chars("abab"), 2, 0),
                    rws::InvalidInputError);
    CHECK_THROWS_AS(rws::build_periodic_grammar(from_chars("abab"), 2, 5),
                    rws::InvalidInputError);
    CHECK_THROWS_AS(rws::build_periodic_grammar({}, 2, 1), rws::InvalidInputError);
    // A period equal to the length is always admissible.
    CHECK(rws::expand_grammar(rws::build_periodic_grammar(from_chars("abcd"), 4, 4)) ==
          from_chars("abcd"));
}

TEST_CASE("expansion rejects malformed grammars") {
    rws::Grammar cyc;
    cyc.sigma = 2;
    cyc.productions.resize(2);
    cyc.productions[0].rhs = {{false, 1}};
    cyc.productions[1].rhs = {{false, 0}};
    CHECK_THROWS_AS(rws::expand_grammar(cyc), rws::DecodeError);

    rws::Grammar self;
    self.sigma = 2;
    self.productions.resize(1);
    self.productions[0].rhs = {{false, 0}};
    CHECK_THROWS_AS(rws::expand_grammar(self), rws::DecodeError);

    rws::Grammar missing;
    missing.sigma = 2;
    missing.productions.resize(1);
    missing.productions[0].rhs = {{false, 7}};
    CHECK_THROWS_AS(rws::expand_grammar(missing), rws::DecodeError);

    rws::Grammar badterm;
    badterm.sigma = 2;
    badterm.productions.resize(1);
    badterm.productions[0].rhs = {{true, 5}};
    CHECK_THROWS_AS(rws::expand_grammar(badterm), rws::DecodeError);

    const rws::Grammar g = rws::build_periodic_grammar(from_chars("aaaa"), 2, 1);
    CHECK_THROWS_AS(rws::expand_grammar(g, 3), rws::DecodeError);
}

TEST_CASE("grammar text form") {
    rws::Grammar g;
    g.sigma = 256;
    g.productions.resize(2);
    g.productions[0].rhs = {{false, 1}, {true, 'a'}, {true, 7}};
    g.productions[1].rhs = {{true, 'b'}};
    const std::string text = rws::grammar_to_text(g);
    CHECK(text == "N0: N1 'a' #7\nN1: 'b'\n");
}

}  // TEST_SUITE
