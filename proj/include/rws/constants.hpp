#pragma once

#include <cstdint>

namespace rws {

// Calibrated constants for the measured resource bounds.  Each value was
// fixed once from a calibration run on the reference corpora (see README,
// "Calibrated constants") and is asserted, never adjusted, by the tests.

// Pass-count ceilings, as multiples of ceil(log2 n)^2.
constexpr double kCSa = 4.0;    // suffix array construction
constexpr double kCBwt = 4.0;   // forward transform
constexpr double kCInv = 5.0;   // inverse transform
constexpr double kCRank = 4.0;  // permutation ranking
constexpr double kCPipe = 5.0;  // entropy-only compression, end to end
constexpr double kCPer = 5.0;   // period detection

// Order-0 coder: output bits <= n*H0(s) + kCAc * (sigma * log2(n) + 1).
constexpr double kCAc = 4.0;

// Block compressor: per-block model cost coefficient and memory coefficient
// (payload <= |block|*H_k + kB * sigma^(k+1) * log2(c) + header; declared
// memory <= c*log2(sigma) + kBMem * sigma^(k_max+1) * log2(c)).
constexpr double kB = 2.0;
constexpr double kBMem = 2.0;

// Per-block frame overhead in bits (1-byte order + 4-byte payload length).
constexpr uint64_t kHBits = 40;

// Universality threshold: redundancy in bits/char at n = 2^20 for the
// order-1 binary Markov reference source.
constexpr double kUniversalityThreshold = 0.2;

// Periodic-grammar size: bits <= kCG1 * ell * ceil(log2 sigma)
//                              + kCG2 * log2(n) * log2(log2(n)).
constexpr double kCG1 = 12.0;
constexpr double kCG2 = 6.0;

// Entropy-only output: bits <= kA * hk_star_total(s, k) + kAPrime * log2 n.
constexpr double kA = 3.0;
constexpr double kAPrime = 400.0;

}  // namespace rws
