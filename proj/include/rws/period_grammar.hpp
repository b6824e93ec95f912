#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rws/entropy.hpp"
#include "rws/errors.hpp"
#include "rws/machine.hpp"

namespace rws {

// Smallest ell >= 1 with s[i] == s[i + ell] for all valid i, via the failure
// function of s.  Returns 0 for the empty string, n for aperiodic strings.
uint64_t min_period_oracle(const SymString& s);

// Stream-model route: build the suffix array, read the candidate period off
// the predecessor of the full-string suffix, then verify it with a full
// comparison pass over two aligned copies of the input.  A verified candidate
// is provably minimal; when verification fails (possible only for strings
// with fewer than two full repetitions), the longest border is bounded by the
// candidate's matched prefix, which a downward border scan then recovers.
uint64_t min_period_streams(StreamMachine& m, const SymString& s, uint32_t sigma);

// Straight-line grammar: each production derives exactly one string; the
// start production is productions[0].
struct Grammar {
    struct Item {
        bool terminal = false;
        uint32_t value = 0;  // symbol if terminal, production index otherwise
    };
    struct Production {
        std::vector<Item> rhs;
    };
    uint32_t sigma = 0;
    std::vector<Production> productions;
};

// Grammar deriving exactly s, built from its period ell: a base production
// for the repeated prefix t = s[0..ell), a doubling chain realizing
// t^floor(n/ell) through the binary decomposition of the repeat count, and a
// tail production for the leftover proper prefix of t.
Grammar build_periodic_grammar(const SymString& s, uint32_t sigma, uint64_t ell);

// The unique string derived by the start production.  Throws DecodeError on
// cyclic or malformed grammars, or if the expansion exceeds max_len symbols.
SymString expand_grammar(const Grammar& g, uint64_t max_len = (1ull << 26));

// Total right-hand-side length times ceil(log2(#productions + sigma)) bits.
uint64_t grammar_size_bits(const Grammar& g);

// One production per line, start production first: "N0: N1 'a' #300".
std::string grammar_to_text(const Grammar& g);

}  // namespace rws
