#pragma once

// ---------------------------------------------------------------------------
// Symbol coders:
//  - move-to-front over an explicit alphabet [0, sigma)
//  - run-length layer for zero runs with Elias gamma codes: a zero run of
//    length r is written as gamma(1) gamma(r) (the single bit '1' acts as the
//    escape, which is available because every nonzero index i is written as
//    gamma(i + 1), and those codes all start with '0')
//  - adaptive arithmetic coding with the add-one-half (Krichevsky-Trofimov)
//    estimator, order 0 or order k with the context reset at block start,
//    carried by a carry-propagating 32-bit range coder (byte output).
// ---------------------------------------------------------------------------

#include <cstdint>
#include <functional>
#include <vector>

#include "rws/bits.hpp"
#include "rws/entropy.hpp"

namespace rws {

// --- move-to-front ---------------------------------------------------------
// Initial list is the sorted alphabet 0, 1, ..., sigma-1.
SymString mtf_encode(const SymString& s, uint32_t sigma);
SymString mtf_decode(const SymString& indices, uint32_t sigma);

// --- zero-run + gamma layer ------------------------------------------------
BitBuffer rle_gamma_encode(const SymString& indices);
// Decodes exactly `count` indices from the reader (leaves it positioned after
// the last token consumed).
SymString rle_gamma_decode(BitReader& in, uint64_t count);

// --- adaptive arithmetic coding -------------------------------------------
// Order-0 adaptive coding of s over [0, sigma); empty input yields an empty
// buffer.  Output length is always a whole number of bytes.
BitBuffer ac_encode(const SymString& s, uint32_t sigma);
SymString ac_decode(const BitBuffer& buf, uint64_t n, uint32_t sigma);

// Order-k adaptive coding; the context is the previous k symbols, taken as
// zeros before the first symbol.  k == 0 matches ac_encode/ac_decode.
BitBuffer ac_encode_order(const SymString& s, uint32_t sigma, uint32_t k);
SymString ac_decode_order(const BitBuffer& buf, uint64_t n, uint32_t sigma, uint32_t k);

// Exact output length in bits of ac_encode_order without materializing the
// buffer (used for model selection).
uint64_t ac_cost_bits(const SymString& s, uint32_t sigma, uint32_t k);

// --- incremental coding ----------------------------------------------------
// Byte-at-a-time plumbing so coder input/output can ride on machine streams.
// A source returns the next byte, or any negative value once exhausted
// (the decoder then sees zero bytes, which is what the encoder's flush
// assumes).
using ByteSinkFn = std::function<void(uint8_t)>;
using ByteSourceFn = std::function<int()>;

// Pull-style adaptive order-0 decoder for consumers that discover the symbol
// count as they go (the run-length layer).  Reads bytes lazily.
class AdaptiveDecoder {
public:
    AdaptiveDecoder(ByteSourceFn source, uint32_t sigma);
    ~AdaptiveDecoder();
    AdaptiveDecoder(const AdaptiveDecoder&) = delete;
    AdaptiveDecoder& operator=(const AdaptiveDecoder&) = delete;

    Symbol next();

private:
    struct Impl;
    Impl* impl_;
};

// Push-style adaptive order-0 encoder; emits bytes to the sink as they are
// finalized.  finish() flushes; encoding nothing emits nothing.
class AdaptiveEncoder {
public:
    AdaptiveEncoder(ByteSinkFn sink, uint32_t sigma);
    ~AdaptiveEncoder();
    AdaptiveEncoder(const AdaptiveEncoder&) = delete;
    AdaptiveEncoder& operator=(const AdaptiveEncoder&) = delete;

    void push(Symbol sym);
    void finish();

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace rws
