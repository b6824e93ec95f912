#pragma once

#include <cstdint>
#include <vector>

#include "rws/entropy.hpp"
#include "rws/errors.hpp"
#include "rws/machine.hpp"

namespace rws {

// Reduction from integer sorting to the block-sorting transform: each bit of
// each input number becomes a fixed-width ternary phrase; the transform of
// the combined string ends with the instance's bits in sorted order.

struct SortInstance {
    uint64_t n = 0;                // power of two, >= 2
    std::vector<uint64_t> values;  // n values, each < 2^(2*log2(n))
};

// Field widths for an instance of n = 2^L values: value 2L bits, index L
// bits, bit position ceil(log2(2L)) bits.
struct PhraseShape {
    uint32_t l = 0;        // log2 n
    uint32_t value_bits = 0;
    uint32_t index_bits = 0;
    uint32_t pos_bits = 0;
    uint64_t phrase_len = 0;   // 2 + value_bits + index_bits + pos_bits
    uint64_t total_len = 0;    // 2 * n * l * phrase_len
};

PhraseShape phrase_shape(uint64_t n);

// Wraps arbitrary input values into a valid instance: count is padded up to
// a power of two (>= 2) with maximal values, which sort last and are
// stripped after sorting; values must fit 2*log2(n) bits.
SortInstance make_instance(const std::vector<uint64_t>& values);

// The ternary encoding: per value i (1-based) and bit position j (1-based,
// most significant first), the phrase bit(x_i,j) '2' x_i i-1 j-1 with all
// fields MSB-first.
SymString encode_instance(const SortInstance& inst);

// Runs the transform over encode_instance(inst) and reads the sorted values
// off its tail.
std::vector<uint64_t> sort_via_bwt(StreamMachine& m, const SortInstance& inst);

// Splits a 2*n*log2(n)-bit string into n words, MSB-first.
std::vector<uint64_t> decode_sorted(const std::vector<uint8_t>& tail_bits, uint64_t n);

// Convenience: pad, sort, strip the padding.
std::vector<uint64_t> sort_numbers(StreamMachine& m, const std::vector<uint64_t>& values);

}  // namespace rws
