#pragma once

#include <cstdint>
#include <vector>

#include "rws/entropy.hpp"

namespace rws {

// Independent reference implementations used to cross-check the stream-model
// algorithms.  All are direct in-memory computations with no shared code
// paths into the machine route.

// Sort all rotations of s plus the sentinel and read the last column.
SymString bwt_rotation_oracle(const SymString& s, uint32_t sigma);

// Suffix start positions (1-based, sentinel suffix included) in
// lexicographic order, by direct comparison sort.
std::vector<uint32_t> suffix_array_oracle(const SymString& s, uint32_t sigma);

// Smallest period by direct scan over every candidate length.
uint64_t period_naive(const SymString& s);

// The orbit pi^0(1), pi^1(1), ..., pi^(M-1)(1) by direct iteration.
std::vector<uint32_t> orbit_oracle(const std::vector<uint32_t>& pi);

}  // namespace rws
