#include "rws/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "rws/bits.hpp"

namespace rws {

std::vector<uint64_t> occ(const SymString& s, uint32_t sigma) {
    if (sigma == 0) throw InvalidInputError("alphabet size must be positive");
    std::vector<uint64_t> counts(sigma, 0);
    for (Symbol c : s) {
        if (c >= sigma) throw InvalidInputError("symbol outside the declared alphabet");
        ++counts[c];
    }
    return counts;
}

namespace {

// m * H_0 of a follower multiset given its counts: m*log2(m) - sum c*log2(c).
long double group_cost_bits(const std::vector<uint64_t>& counts, uint64_t m) {
    if (m == 0) return 0.0L;
    long double cost = static_cast<long double>(m) * std::log2(static_cast<long double>(m));
    for (uint64_t c : counts)
        if (c > 1) cost -= static_cast<long double>(c) * std::log2(static_cast<long double>(c));
    return cost < 0.0L ? 0.0L : cost;
}

// Context/follower pair stream for order k >= 1, visited in lexicographic
// context order.  Calls visit(context_start_index, count, follower_counts).
template <typename Visit>
void for_each_context(const SymString& s, uint32_t k, uint32_t sigma, Visit&& visit) {
    const size_t n = s.size();
    if (n < static_cast<size_t>(k) + 1) return;
    const size_t positions = n - k;
    const uint32_t width = std::max<uint32_t>(1, ceil_log2(sigma));

    std::vector<uint64_t> counts(sigma, 0);
    if (static_cast<uint64_t>(k) * width <= 64) {
        // Packed path: context as a 64-bit key; group by sorting keys.
        std::vector<std::pair<uint64_t, size_t>> keyed;
        keyed.reserve(positions);
        uint64_t key = 0;
        const uint64_t mask = (k * width == 64) ? ~0ull : ((1ull << (k * width)) - 1);
        for (size_t i = 0; i < positions; ++i) {
            if (i == 0) {
                for (uint32_t j = 0; j < k; ++j) key = (key << width) | s[j];
            } else {
                key = ((key << width) | s[i + k - 1]) & mask;
            }
            keyed.emplace_back(key, i);
        }
        std::sort(keyed.begin(), keyed.end());
        size_t g = 0;
        while (g < keyed.size()) {
            size_t e = g;
            while (e < keyed.size() && keyed[e].first == keyed[g].first) ++e;
            std::fill(counts.begin(), counts.end(), 0);
            for (size_t i = g; i < e; ++i) ++counts[s[keyed[i].second + k]];
            visit(keyed[g].second, e - g, counts);
            g = e;
        }
    } else {
        // General path: sort context start positions by comparing k symbols.
        std::vector<size_t> idx(positions);
        for (size_t i = 0; i < positions; ++i) idx[i] = i;
        auto cmp = [&](size_t a, size_t b) {
            return std::lexicographical_compare(s.begin() + a, s.begin() + a + k,
                                                s.begin() + b, s.begin() + b + k);
        };
        auto eq = [&](size_t a, size_t b) {
            return std::equal(s.begin() + a, s.begin() + a + k, s.begin() + b);
        };
        std::sort(idx.begin(), idx.end(), cmp);
        size_t g = 0;
        while (g < idx.size()) {
            size_t e = g;
            while (e < idx.size() && eq(idx[e], idx[g])) ++e;
            std::fill(counts.begin(), counts.end(), 0);
            for (size_t i = g; i < e; ++i) ++counts[s[idx[i] + k]];
            visit(idx[g], e - g, counts);
            g = e;
        }
    }
}

}  // namespace

double h0(const SymString& s, uint32_t sigma) {
    const std::vector<uint64_t> counts = occ(s, sigma);
    return static_cast<double>(group_cost_bits(counts, s.size()) /
                               std::max<uint64_t>(1, s.size()));
}

double hk(const SymString& s, uint32_t k, uint32_t sigma) {
    if (k == 0) return h0(s, sigma);
    occ(s, sigma);  // validate symbols
    if (s.size() < static_cast<size_t>(k) + 1) return 0.0;
    long double total = 0.0L;
    for_each_context(s, k, sigma, [&](size_t, size_t m, const std::vector<uint64_t>& counts) {
        total += group_cost_bits(counts, m);
    });
    return static_cast<double>(total / static_cast<long double>(s.size()));
}

double hk_star_total(const SymString& s, uint32_t k, uint32_t sigma) {
    occ(s, sigma);  // validate symbols
    if (k == 0) {
        const uint64_t n = s.size();
        if (n == 0) return 0.0;
        const long double cost = group_cost_bits(occ(s, sigma), n);
        const long double floor_cost = floor_log2(n) + 1;
        return static_cast<double>(std::max(cost, floor_cost));
    }
    if (s.size() < static_cast<size_t>(k) + 1) return 0.0;
    long double total = 0.0L;
    for_each_context(s, k, sigma, [&](size_t, size_t m, const std::vector<uint64_t>& counts) {
        const long double cost = group_cost_bits(counts, m);
        const long double floor_cost = floor_log2(m) + 1;
        total += std::max(cost, floor_cost);
    });
    return static_cast<double>(total);
}

std::vector<ContextStat> context_table(const SymString& s, uint32_t k, uint32_t sigma) {
    occ(s, sigma);  // validate symbols
    std::vector<ContextStat> table;
    if (k == 0) {
        if (s.empty()) return table;
        ContextStat c;
        c.count = s.size();
        c.h0_bits = h0(s, sigma);
        table.push_back(std::move(c));
        return table;
    }
    for_each_context(s, k, sigma, [&](size_t start, size_t m, const std::vector<uint64_t>& counts) {
        ContextStat c;
        c.context.assign(s.begin() + start, s.begin() + start + k);
        c.count = m;
        c.h0_bits = static_cast<double>(group_cost_bits(counts, m) / static_cast<long double>(m));
        table.push_back(std::move(c));
    });
    return table;
}

EntropyReport entropy_report(const SymString& s, uint32_t k, uint32_t sigma) {
    EntropyReport r;
    r.n = s.size();
    r.sigma = sigma;
    for (uint32_t j = 0; j <= k; ++j) r.h.push_back(hk(s, j, sigma));
    r.hk_star = hk_star_total(s, k, sigma);
    return r;
}

}  // namespace rws
