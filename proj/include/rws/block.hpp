#pragma once

#include <cstdint>
#include <vector>

#include "rws/bits.hpp"
#include "rws/entropy.hpp"
#include "rws/errors.hpp"
#include "rws/machine.hpp"

namespace rws {

// One-pass, one-input-stream block compressor: the input rides on a machine
// stream, each block is buffered in declared memory, coded with the best
// adaptive order <= k_max, and framed into a self-describing container.

constexpr uint32_t kAutoOrder = UINT32_MAX;
constexpr uint64_t kBlockHeaderBits = 40;  // 1-byte order + 4-byte payload length
constexpr uint64_t kGlobalHeaderBytes = 23;

struct BlockCompressOptions {
    uint64_t block_size = 0;       // 0 = ceil(log2 n)^2
    uint32_t k_max = kAutoOrder;   // kAutoOrder = floor(log_sigma c), budget-clamped
    bool length_known = true;      // false = fixed 4096 start, doubling every sigma blocks
};

struct ChosenOrder {
    uint32_t k = 0;
    BitBuffer bits;
};

// Encodes the block at every order 0..k_max and keeps the smallest output;
// ties break toward the smaller order.
ChosenOrder choose_order(const SymString& block, uint32_t sigma, uint32_t k_max);

// Compresses the contents of input stream `id` (already attached, heads at
// the start) in exactly one metered read pass.  n = stream size.
std::vector<uint8_t> block_compress_stream(StreamMachine& m, StreamId id, uint32_t sigma,
                                           const BlockCompressOptions& opt = {});

// Convenience wrapper: attaches s to a fresh stream of m, then compresses.
std::vector<uint8_t> block_compress(StreamMachine& m, const SymString& s, uint32_t sigma,
                                    const BlockCompressOptions& opt = {});

SymString block_decompress(const std::vector<uint8_t>& container);

struct BlockInfo {
    uint32_t k = 0;
    uint64_t payload_bits = 0;
    uint64_t plain_len = 0;
};

struct ContainerInfo {
    uint64_t n = 0;
    uint32_t sigma = 0;
    uint64_t block_size = 0;  // 0 = growth schedule
    std::vector<BlockInfo> blocks;
};

ContainerInfo parse_container(const std::vector<uint8_t>& container);

// Block size of 0-based block b under the unknown-length growth schedule.
uint64_t growth_block_size(uint64_t b, uint32_t sigma);

}  // namespace rws
