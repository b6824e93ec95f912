#include "rws/bits.hpp"

#include <cstdio>

namespace rws {

void put_le(std::vector<uint8_t>& out, uint64_t v, unsigned bytes) {
    for (unsigned i = 0; i < bytes; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint64_t get_le(const std::vector<uint8_t>& in, size_t& pos, unsigned bytes) {
    if (pos + bytes > in.size()) throw FormatError("truncated input");
    uint64_t v = 0;
    for (unsigned i = 0; i < bytes; ++i) v |= static_cast<uint64_t>(in[pos + i]) << (8 * i);
    pos += bytes;
    return v;
}

std::vector<uint8_t> read_file_bytes(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw Error("cannot open file: " + path);
    std::vector<uint8_t> data;
    uint8_t buf[1 << 16];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) data.insert(data.end(), buf, buf + got);
    std::fclose(f);
    return data;
}

void write_file_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Error("cannot open file for writing: " + path);
    if (!bytes.empty() && std::fwrite(bytes.data(), 1, bytes.size(), f) != bytes.size()) {
        std::fclose(f);
        throw Error("short write: " + path);
    }
    std::fclose(f);
}

void save_bit_buffer(const BitBuffer& buf, const std::string& path) {
    std::vector<uint8_t> out;
    put_le(out, buf.bit_size(), 8);
    out.insert(out.end(), buf.bytes().begin(), buf.bytes().end());
    write_file_bytes(path, out);
}

BitBuffer load_bit_buffer(const std::string& path) {
    const std::vector<uint8_t> data = read_file_bytes(path);
    size_t pos = 0;
    const uint64_t nbits = get_le(data, pos, 8);
    const size_t need = (nbits + 7) / 8;
    if (data.size() - pos < need) throw FormatError("bit buffer truncated");
    std::vector<uint8_t> bytes(data.begin() + static_cast<ptrdiff_t>(pos),
                               data.begin() + static_cast<ptrdiff_t>(pos + need));
    // Padding bits past the declared length must be zero.
    if (nbits % 8 != 0 && !bytes.empty()) {
        const uint8_t tail = bytes.back() & static_cast<uint8_t>(0xFFu >> (nbits % 8));
        if (tail != 0) throw FormatError("nonzero padding in bit buffer");
    }
    return BitBuffer::from_bytes(std::move(bytes), nbits);
}

}  // namespace rws
