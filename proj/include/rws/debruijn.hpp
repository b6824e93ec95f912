#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rws/entropy.hpp"
#include "rws/errors.hpp"

namespace rws {

// Cyclic sigma-ary sequence of length sigma^k in which every k-tuple over
// the alphabet occurs exactly once (cyclically).

struct DeBruijnCycle {
    uint32_t sigma = 0;
    uint32_t k = 0;
    SymString cycle;
};

// Deterministic generator: Eulerian circuit over the order-(k-1) graph with
// smallest-edge-first traversal, rotated so the cycle starts with k zeros.
// Throws BudgetError when sigma^k exceeds max_len.
DeBruijnCycle generate_cycle(uint32_t sigma, uint32_t k, uint64_t max_len = (1ull << 26));

// True iff every k-tuple occurs exactly once in the cyclic window scan.
bool is_debruijn_cycle(const DeBruijnCycle& c);

// Exact cycle count: sigma!^(sigma^(k-1)) / sigma^k, as a decimal string.
// Throws BudgetError when the result would exceed roughly a million bits.
std::string count_cycles(uint32_t sigma, uint32_t k);

// Exhaustive enumeration of all cycles anchored to start with the smallest
// k-tuple (all zeros); requires sigma^k <= 12.
std::vector<DeBruijnCycle> enumerate_cycles_small(uint32_t sigma, uint32_t k);

// Count-only variant of the exhaustive search, same anchoring, no cap on the
// number of cycles (still requires sigma^k <= 12).
uint64_t count_cycles_exhaustive(uint32_t sigma, uint32_t k);

// The generated cycle repeated cyclically out to n symbols (the final
// repetition is truncated when sigma^k does not divide n).
SymString adversarial_string(uint32_t sigma, uint32_t k, uint64_t n);

}  // namespace rws
