#pragma once

// ---------------------------------------------------------------------------
// Bit-level utilities: an append/read bit buffer with exact bit length,
// MSB-first packing, Elias gamma codes, and the on-disk bit-buffer format
// (8-byte LE bit count, then the bits packed MSB-first, zero-padded to a
// whole byte).
// ---------------------------------------------------------------------------

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "rws/errors.hpp"

namespace rws {

// Number of bits needed to write v in binary; width_bits(0) == 0.
inline uint32_t width_bits(uint64_t v) {
    uint32_t w = 0;
    while (v != 0) { ++w; v >>= 1; }
    return w;
}

// ceil(log2(v)) for v >= 1.
inline uint32_t ceil_log2(uint64_t v) {
    if (v <= 1) return 0;
    return width_bits(v - 1);
}

// floor(log2(v)) for v >= 1.
inline uint32_t floor_log2(uint64_t v) {
    return width_bits(v) - 1;
}

// Growable bit sequence with exact length in bits.  Bits are stored MSB-first
// within each byte, which is also the serialized order.
class BitBuffer {
public:
    BitBuffer() = default;

    size_t bit_size() const { return bit_size_; }
    bool empty() const { return bit_size_ == 0; }
    const std::vector<uint8_t>& bytes() const { return bytes_; }

    void push_bit(bool b) {
        const size_t byte = bit_size_ >> 3;
        if (byte == bytes_.size()) bytes_.push_back(0);
        if (b) bytes_[byte] |= static_cast<uint8_t>(0x80u >> (bit_size_ & 7));
        ++bit_size_;
    }

    // Append the low `width` bits of v, most significant first.
    void push_bits(uint64_t v, uint32_t width) {
        for (uint32_t i = width; i-- > 0;) push_bit((v >> i) & 1u);
    }

    // Append a whole byte (MSB first).
    void push_byte(uint8_t b) { push_bits(b, 8); }

    bool get_bit(size_t i) const {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
    }

    // Append the contents of another buffer bit-by-bit.
    void append(const BitBuffer& other) {
        for (size_t i = 0; i < other.bit_size(); ++i) push_bit(other.get_bit(i));
    }

    bool operator==(const BitBuffer& other) const {
        if (bit_size_ != other.bit_size_) return false;
        for (size_t i = 0; i < bit_size_; ++i)
            if (get_bit(i) != other.get_bit(i)) return false;
        return true;
    }

    static BitBuffer from_bytes(std::vector<uint8_t> bytes, size_t bit_size) {
        BitBuffer b;
        b.bytes_ = std::move(bytes);
        b.bit_size_ = bit_size;
        return b;
    }

private:
    std::vector<uint8_t> bytes_;
    size_t bit_size_ = 0;
};

// Sequential reader over a BitBuffer.
class BitReader {
public:
    explicit BitReader(const BitBuffer& buf) : buf_(&buf) {}

    size_t position() const { return pos_; }
    size_t remaining() const { return buf_->bit_size() - pos_; }

    bool read_bit() {
        if (pos_ >= buf_->bit_size())
            throw DecodeError("bit stream exhausted");
        return buf_->get_bit(pos_++);
    }

    uint64_t read_bits(uint32_t width) {
        uint64_t v = 0;
        for (uint32_t i = 0; i < width; ++i) v = (v << 1) | (read_bit() ? 1u : 0u);
        return v;
    }

private:
    const BitBuffer* buf_;
    size_t pos_ = 0;
};

// Elias gamma code for v >= 1: (width-1) zeros, then v in binary.
inline void gamma_encode(BitBuffer& out, uint64_t v) {
    if (v == 0) throw Error("gamma code requires v >= 1");
    const uint32_t w = width_bits(v);
    for (uint32_t i = 0; i + 1 < w; ++i) out.push_bit(false);
    out.push_bits(v, w);
}

inline uint64_t gamma_decode(BitReader& in) {
    uint32_t zeros = 0;
    while (!in.read_bit()) {
        if (++zeros > 63) throw DecodeError("gamma code too long");
    }
    uint64_t v = 1;
    for (uint32_t i = 0; i < zeros; ++i) v = (v << 1) | (in.read_bit() ? 1u : 0u);
    return v;
}

// Total bits the gamma code of v occupies.
inline uint32_t gamma_length(uint64_t v) { return 2 * width_bits(v) - 1; }

// File form: 8-byte little-endian bit count, then packed bytes.
void save_bit_buffer(const BitBuffer& buf, const std::string& path);
BitBuffer load_bit_buffer(const std::string& path);

// Little-endian scalar helpers shared by the container formats.
void put_le(std::vector<uint8_t>& out, uint64_t v, unsigned bytes);
uint64_t get_le(const std::vector<uint8_t>& in, size_t& pos, unsigned bytes);

std::vector<uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<uint8_t>& bytes);

}  // namespace rws
