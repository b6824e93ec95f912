#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "rws/entropy.hpp"
#include "rws/errors.hpp"

namespace {

using rws::SymString;

SymString from_chars(const char* text, char base = 'a') {
    SymString s;
    for (const char* p = text; *p; ++p) s.push_back(static_cast<rws::Symbol>(*p - base));
    return s;
}

double ref_h0_total(const std::map<rws::Symbol, uint64_t>& counts, uint64_t n) {
    double total = 0.0;
    for (const auto& [sym, c] : counts) {
        (void)sym;
        if (c > 0) total += double(c) * std::log2(double(n) / double(c));
    }
    return total;
}

// Order-k statistics computed with a plain map, for cross-checking.
struct RefStats {
    double hk_per_char = 0.0;
    double hk_star_total = 0.0;
};

RefStats ref_order_k(const SymString& s, uint32_t k) {
    RefStats r;
    const uint64_t n = s.size();
    if (n == 0 || k >= n) return r;
    std::map<SymString, std::map<rws::Symbol, uint64_t>> ctx;
    for (uint64_t i = 0; i + k < n; ++i) {
        SymString w(s.begin() + ptrdiff_t(i), s.begin() + ptrdiff_t(i + k));
        ctx[w][s[i + k]] += 1;
    }
    double total = 0.0;
    double star = 0.0;
    for (const auto& [w, counts] : ctx) {
        (void)w;
        uint64_t m = 0;
        for (const auto& [sym, c] : counts) {
            (void)sym;
            m += c;
        }
        const double t = ref_h0_total(counts, m);
        total += t;
        star += std::max(t, std::floor(std::log2(double(m))) + 1.0);
    }
    r.hk_per_char = total / double(n);
    r.hk_star_total = star;
    return r;
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("occurrence counts and validation") {
    const SymString banana = {1, 0, 2, 0, 2, 0};  // b=1 a=0 n=2
    CHECK(rws::occ(banana, 3) == std::vector<uint64_t>{3, 1, 2});
    CHECK(rws::occ({}, 4) == std::vector<uint64_t>{0, 0, 0, 0});
    CHECK_THROWS_AS(rws::occ({0, 5}, 3), rws::Error);
}

TEST_CASE("order-0 entropy on known strings") {
    CHECK(rws::h0(from_chars("aab"), 2) ==
          doctest::Approx(0.9182958340544896).epsilon(1e-12));
    CHECK(rws::h0(from_chars("ab"), 2) == doctest::Approx(1.0));
    CHECK(rws::h0(from_chars("aaaa"), 2) == doctest::Approx(0.0));
    CHECK(rws::h0({}, 2) == doctest::Approx(0.0));
    CHECK(rws::h0(from_chars("abc"), 3) == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("order-1 entropy of a deterministic-context string is zero") {
    const SymString banana = {1, 0, 2, 0, 2, 0};
    CHECK(rws::hk(banana, 1, 3) == doctest::Approx(0.0));
    CHECK(rws::hk(banana, 0, 3) == doctest::Approx(rws::h0(banana, 3)));
}

TEST_CASE("modified order-0 cost of a constant string is the one-word floor") {
    const SymString ones(1024, 1);
    CHECK(rws::hk_star_total(ones, 0, 2) == doctest::Approx(11.0));
}

TEST_CASE("modified order-1 cost of banana") {
    // Contexts a (2 followers), b (1), n (2), all deterministic: the floors
    // 2 + 1 + 2 dominate.
    const SymString banana = {1, 0, 2, 0, 2, 0};
    CHECK(rws::hk_star_total(banana, 1, 3) == doctest::Approx(5.0));
}

TEST_CASE("degenerate orders") {
    const SymString s = from_chars("abba");
    CHECK(rws::hk(s, 4, 2) == doctest::Approx(0.0));   // k >= n: no contexts
    CHECK(rws::hk(s, 10, 2) == doctest::Approx(0.0));
    CHECK(rws::hk_star_total(s, 10, 2) == doctest::Approx(0.0));
    CHECK(rws::hk({}, 0, 2) == doctest::Approx(0.0));
}

TEST_CASE("orders 0..3 match a map-based reference on all ternary strings up to length 9") {
    for (uint32_t len = 1; len <= 9; ++len) {
        const uint64_t total = [&] {
            uint64_t t = 1;
            for (uint32_t i = 0; i < len; ++i) t *= 3;
            return t;
        }();
        for (uint64_t code = 0; code < total; ++code) {
            SymString s(len);
            uint64_t c = code;
            for (uint32_t i = 0; i < len; ++i) {
                s[i] = static_cast<rws::Symbol>(c % 3);
                c /= 3;
            }
            for (uint32_t k = 0; k <= 3; ++k) {
                const RefStats ref = ref_order_k(s, k);
                if (k == 0) {
                    REQUIRE(rws::h0(s, 3) == doctest::Approx(ref.hk_per_char).epsilon(1e-9));
                }
                REQUIRE(rws::hk(s, k, 3) == doctest::Approx(ref.hk_per_char).epsilon(1e-9));
                REQUIRE(rws::hk_star_total(s, k, 3) ==
                        doctest::Approx(ref.hk_star_total).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("large alphabets take the same values as the reference") {
    std::mt19937_64 rng(41);
    SymString s(2000);
    for (auto& v : s) v = static_cast<rws::Symbol>(rng() % 256);
    for (uint32_t k : {1u, 2u, 3u}) {
        const RefStats ref = ref_order_k(s, k);
        CHECK(rws::hk(s, k, 256) == doctest::Approx(ref.hk_per_char).epsilon(1e-9));
        CHECK(rws::hk_star_total(s, k, 256) ==
              doctest::Approx(ref.hk_star_total).epsilon(1e-9));
    }
}

TEST_CASE("context table of banana at order 1") {
    const SymString banana = {1, 0, 2, 0, 2, 0};
    const auto table = rws::context_table(banana, 1, 3);
    REQUIRE(table.size() == 3);
    CHECK(table[0].context == SymString{0});
    CHECK(table[0].count == 2);
    CHECK(table[0].h0_bits == doctest::Approx(0.0));
    CHECK(table[1].context == SymString{1});
    CHECK(table[1].count == 1);
    CHECK(table[2].context == SymString{2});
    CHECK(table[2].count == 2);
}

TEST_CASE("context table at order 0 has a single empty context") {
    const SymString s = from_chars("aab");
    const auto table = rws::context_table(s, 0, 2);
    REQUIRE(table.size() == 1);
    CHECK(table[0].context.empty());
    CHECK(table[0].count == 3);
    CHECK(table[0].h0_bits == doctest::Approx(rws::h0(s, 2)));
}

TEST_CASE("entropy report bundles all orders") {
    const SymString banana = {1, 0, 2, 0, 2, 0};
    const rws::EntropyReport rep = rws::entropy_report(banana, 2, 3);
    CHECK(rep.n == 6);
    CHECK(rep.sigma == 3);
    REQUIRE(rep.h.size() == 3);
    CHECK(rep.h[0] == doctest::Approx(rws::h0(banana, 3)));
    CHECK(rep.h[1] == doctest::Approx(rws::hk(banana, 1, 3)));
    CHECK(rep.h[2] == doctest::Approx(rws::hk(banana, 2, 3)));
    CHECK(rep.hk_star == doctest::Approx(rws::hk_star_total(banana, 2, 3)));
}

}  // TEST_SUITE
