#include "rws/period_grammar.hpp"

#include <algorithm>

#include "rws/bits.hpp"
#include "rws/bwt.hpp"

namespace rws {

uint64_t min_period_oracle(const SymString& s) {
    const uint64_t n = s.size();
    if (n == 0) return 0;
    std::vector<uint64_t> fail(n + 1, 0);
    for (uint64_t i = 1; i < n; ++i) {
        uint64_t j = fail[i];
        while (j > 0 && s[i] != s[j]) j = fail[j];
        fail[i + 1] = (s[i] == s[j]) ? j + 1 : 0;
    }
    return n - fail[n];
}

uint64_t min_period_streams(StreamMachine& m, const SymString& s, uint32_t sigma) {
    const uint64_t n = s.size();
    if (n == 0) return 0;
    if (n == 1) {
        occ(s, sigma);
        return 1;
    }

    // The suffix array starts with the sentinel suffix; the full-string
    // suffix (position 1) sits somewhere after it, and its predecessor's
    // start position p makes p - 1 the candidate period.  The sentinel as
    // predecessor encodes the borderless case, candidate n.
    const std::vector<uint32_t> sa = suffix_array_streams(m, s, sigma);
    uint64_t cand = 0;
    for (size_t r = 1; r < sa.size(); ++r) {
        if (sa[r] == 1) {
            cand = sa[r - 1] - 1;
            break;
        }
    }
    if (cand == 0 || cand > n) throw Error("internal: period candidate out of range");

    // Verification and fallback both co-read two aligned copies of the input,
    // one offset by a fixed number of records.
    const uint32_t sw = std::max(1u, width_bits(sigma > 0 ? sigma - 1 : 0));
    const StreamId a = m.ensure_stream(0, sw);
    const StreamId b = m.ensure_stream(1, sw);
    const std::vector<uint64_t> recs(s.begin(), s.end());
    m.load_stream(a, recs);
    m.load_stream(b, recs);
    m.declare_memory(256);

    const auto park = [&] {
        m.rewind(a);
        m.rewind(b);
    };
    const auto is_period = [&](uint64_t ell) {
        park();
        for (uint64_t skip = 0; skip < ell; ++skip) m.read_next(b);
        while (auto ahead = m.read_next(b)) {
            const auto cur = m.read_next(a);
            if (!cur || *cur != *ahead) return false;
        }
        return true;
    };

    // A candidate that verifies is the minimum: a shorter period would put a
    // longer-matching suffix strictly between the predecessor and the full
    // string, which adjacency rules out.
    if (is_period(cand)) {
        park();
        return cand;
    }

    // Verification can only fail when the string holds fewer than two full
    // repetitions of its period.  Every border then fits inside the
    // candidate's matched prefix: a longer border's suffix would outrank the
    // predecessor.  Measure that prefix and scan border lengths downward;
    // the first prefix/suffix match j gives the period n - j.
    uint64_t lambda = 0;
    park();
    for (uint64_t skip = 0; skip < cand; ++skip) m.read_next(b);
    while (auto ahead = m.read_next(b)) {
        const auto cur = m.read_next(a);
        if (!cur || *cur != *ahead) break;
        ++lambda;
    }
    for (uint64_t j = lambda; j >= 1; --j) {
        park();
        for (uint64_t skip = 0; skip < n - j; ++skip) m.read_next(b);
        bool border = true;
        for (uint64_t i = 0; i < j; ++i) {
            const auto pre = m.read_next(a);
            const auto suf = m.read_next(b);
            if (!pre || !suf || *pre != *suf) {
                border = false;
                break;
            }
        }
        if (border) {
            park();
            return n - j;
        }
    }
    park();
    return n;
}

Grammar build_periodic_grammar(const SymString& s, uint32_t sigma, uint64_t ell) {
    const uint64_t n = s.size();
    occ(s, sigma);
    Grammar g;
    g.sigma = sigma;
    if (n == 0) {
        if (ell != 0) throw InvalidInputError("period of the empty string must be 0");
        g.productions.resize(1);
        return g;
    }
    if (ell < 1 || ell > n) throw InvalidInputError("period out of range");
    for (uint64_t i = 0; i + ell < n; ++i)
        if (s[i] != s[i + ell]) throw InvalidInputError("given length is not a period");

    const uint64_t reps = n / ell;
    const uint64_t tail_len = n - reps * ell;
    const uint32_t chain_len = floor_log2(reps);  // doubling productions above the base

    // Layout: 0 = start, 1 = repeated part, 2 = tail, 3 + h = h-th doubling.
    g.productions.resize(3 + chain_len + 1);
    g.productions[0].rhs = {{false, 1}, {false, 2}};
    for (uint32_t h = static_cast<uint32_t>(chain_len) + 1; h-- > 0;) {
        if ((reps >> h) & 1) g.productions[1].rhs.push_back({false, 3 + h});
    }
    for (uint64_t i = 0; i < tail_len; ++i)
        g.productions[2].rhs.push_back({true, s[reps * ell + i]});
    for (uint64_t i = 0; i < ell; ++i)
        g.productions[3].rhs.push_back({true, s[i]});
    for (uint32_t h = 1; h <= chain_len; ++h)
        g.productions[3 + h].rhs = {{false, 3 + h - 1}, {false, 3 + h - 1}};
    return g;
}

SymString expand_grammar(const Grammar& g, uint64_t max_len) {
    const size_t count = g.productions.size();
    if (count == 0) throw DecodeError("grammar has no productions");

    // Bottom-up lengths with cycle detection; saturate at max_len + 1.
    std::vector<uint8_t> state(count, 0);  // 0 fresh, 1 in progress, 2 done
    std::vector<uint64_t> len(count, 0);
    std::vector<std::pair<uint32_t, size_t>> stack;
    stack.push_back({0, 0});
    state[0] = 1;
    while (!stack.empty()) {
        auto& [p, i] = stack.back();
        const auto& rhs = g.productions[p].rhs;
        if (i == rhs.size()) {
            uint64_t total = 0;
            for (const auto& item : rhs) {
                const uint64_t part = item.terminal ? 1 : len[item.value];
                total = std::min(total + part, max_len + 1);
            }
            len[p] = total;
            state[p] = 2;
            stack.pop_back();
            continue;
        }
        const auto& item = rhs[i++];
        if (item.terminal) continue;
        if (item.value >= count) throw DecodeError("production refers to a missing nonterminal");
        if (state[item.value] == 1) throw DecodeError("grammar derivation contains a cycle");
        if (state[item.value] == 0) {
            state[item.value] = 1;
            stack.push_back({item.value, 0});
        }
    }
    if (len[0] > max_len) throw DecodeError("grammar expansion exceeds the size cap");

    SymString out;
    out.reserve(len[0]);
    stack.clear();
    stack.push_back({0, 0});
    while (!stack.empty()) {
        auto& [p, i] = stack.back();
        const auto& rhs = g.productions[p].rhs;
        if (i == rhs.size()) {
            stack.pop_back();
            continue;
        }
        const auto& item = rhs[i++];
        if (item.terminal) {
            if (item.value >= g.sigma) throw DecodeError("terminal outside the alphabet");
            out.push_back(static_cast<Symbol>(item.value));
        } else {
            stack.push_back({item.value, 0});
        }
    }
    return out;
}

uint64_t grammar_size_bits(const Grammar& g) {
    uint64_t items = 0;
    for (const auto& p : g.productions) items += p.rhs.size();
    return items * ceil_log2(g.productions.size() + g.sigma);
}

std::string grammar_to_text(const Grammar& g) {
    std::string out;
    for (size_t p = 0; p < g.productions.size(); ++p) {
        out += "N" + std::to_string(p) + ":";
        for (const auto& item : g.productions[p].rhs) {
            if (!item.terminal) {
                out += " N" + std::to_string(item.value);
            } else if (item.value >= 32 && item.value < 127) {
                out += " '";
                out += static_cast<char>(item.value);
                out += '\'';
            } else {
                out += " #" + std::to_string(item.value);
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace rws
