#pragma once

// ---------------------------------------------------------------------------
// Block-sorting transform realized on the streams machine.
//
// Conventions:
//  - Input strings are over [0, sigma); a sentinel is appended for the
//    transform and carried as the symbol value `sigma`, which orders BELOW
//    every other symbol (internally symbols are compared by order value:
//    sentinel -> 0, symbol c -> c+1).
//  - The suffix array is 1-based over s + sentinel (length n + 1), so
//    sa[0] = n + 1 always (the sentinel suffix).
//  - The transform output has length n + 1 and contains the sentinel once.
//
// The machine route builds ranks by prefix doubling: each round re-keys
// (position, rank) records into delivery records, sorts them with the
// two-stream merge sort, zips consecutive records into (rank, next, position)
// triples, sorts again, and rescans to assign refined ranks — everything
// expressed as sequential reads/writes of exactly two streams.  Records pack
// three fields of w = ceil(log2(n + 2)) bits into one 64-bit word, which caps
// the machine route at n <= 2^21 - 2.
// ---------------------------------------------------------------------------

#include <cstdint>
#include <vector>

#include "rws/entropy.hpp"
#include "rws/machine.hpp"

namespace rws {

// Largest input length the machine route supports (packing cap).
constexpr uint64_t kMaxMachineBwtLength = (1ull << 21) - 2;

// 1-based suffix array of s + sentinel.
std::vector<uint32_t> suffix_array_streams(StreamMachine& m, const SymString& s, uint32_t sigma);

// Transform: returns the last column, length n + 1, sentinel as value sigma.
SymString bwt_forward(StreamMachine& m, const SymString& s, uint32_t sigma);

// Inverse: t must contain exactly one sentinel (value sigma) and be a genuine
// transform image; otherwise InvalidInputError.
SymString bwt_inverse(StreamMachine& m, const SymString& t, uint32_t sigma);

// Orbit listing of a permutation by pointer doubling on the machine:
// the output has length M = |pi| and lists pi^j(1) for j = 0..M-1 (the orbit
// of element 1, repeated cyclically when its cycle is shorter than M).
// Rejects non-permutations.
std::vector<uint32_t> rank_permutation(StreamMachine& m, const std::vector<uint32_t>& pi);

// Reference transform in working memory that is logarithmic in |s| beyond the
// input itself: each output position is found independently by counting, with
// plain character comparisons, the suffixes smaller than the one at hand.
SymString bwt_logspace_oracle(const SymString& s, uint32_t sigma);

// --- entropy-only compression pipeline -------------------------------------
// transform -> move-to-front (sentinel-first alphabet order) -> zero-run +
// gamma layer -> adaptive order-0 arithmetic coding of the resulting bits.
// Container: magic "RWSE", 1-byte version, 8-byte LE n, 2-byte LE sigma,
// then the coder's bytes.
std::vector<uint8_t> entropy_only_compress(StreamMachine& m, const SymString& s, uint32_t sigma);
SymString entropy_only_decompress(StreamMachine& m, const std::vector<uint8_t>& container);

}  // namespace rws
