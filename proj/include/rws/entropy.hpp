#pragma once

// ---------------------------------------------------------------------------
// Empirical entropy statistics over strings with explicit alphabet size.
//
// For a string s of length n over [0, sigma):
//   H_0(s)  = (1/n) * sum_a occ_a * log2(n / occ_a)
//   H_k(s)  = (1/n) * sum_w |w_s| * H_0(w_s), where w ranges over the k-tuples
//             occurring at positions 1..n-k (non-cyclic) and w_s concatenates
//             the symbols following each occurrence of w.
//   H_k*(s) total = sum_w max(|w_s| * H_0(w_s), floor(log2 |w_s|) + 1) — the
//             per-context cost with a one-word floor, in bits (not normalized).
// ---------------------------------------------------------------------------

#include <cstdint>
#include <vector>

#include "rws/errors.hpp"

namespace rws {

using Symbol = uint16_t;
using SymString = std::vector<Symbol>;

// Symbol occurrence counts; rejects symbols outside [0, sigma).
std::vector<uint64_t> occ(const SymString& s, uint32_t sigma);

// Order-0 empirical entropy in bits per symbol (0 for n == 0).
double h0(const SymString& s, uint32_t sigma);

// Order-k empirical entropy in bits per symbol; k == 0 agrees with h0.
// Contexts are the non-cyclic k-tuples at positions 1..n-k.
double hk(const SymString& s, uint32_t k, uint32_t sigma);

// Total modified order-k cost in bits (see header comment); 0 when no
// context occurs (k >= n).
double hk_star_total(const SymString& s, uint32_t k, uint32_t sigma);

// Statistics for one order-k context.
struct ContextStat {
    SymString context;     // the k-tuple (empty for k == 0)
    uint64_t count = 0;    // |w_s|
    double h0_bits = 0.0;  // H_0(w_s)
};

// Per-context table for order k, contexts in lexicographic order.
std::vector<ContextStat> context_table(const SymString& s, uint32_t k, uint32_t sigma);

// Bundle of the above for orders 0..k.
struct EntropyReport {
    uint64_t n = 0;
    uint32_t sigma = 0;
    std::vector<double> h;          // h[j] = H_j(s) for j in 0..k
    double hk_star = 0.0;           // hk_star_total at order k
};

EntropyReport entropy_report(const SymString& s, uint32_t k, uint32_t sigma);

}  // namespace rws
