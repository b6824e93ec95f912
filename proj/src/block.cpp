#include "rws/block.hpp"

#include <algorithm>

#include "rws/bits.hpp"
#include "rws/coders.hpp"

namespace rws {

namespace {

constexpr char kMagic[4] = {'R', 'W', 'S', '1'};

uint32_t sym_width(uint32_t sigma) {
    return std::max(1u, width_bits(sigma > 0 ? sigma - 1 : 0));
}

uint32_t floor_log_base(uint64_t v, uint32_t base) {
    uint32_t k = 0;
    uint64_t p = 1;
    while (p <= v / base) {
        p *= base;
        ++k;
    }
    return k;
}

// Counter-table footprint of an order-k model over blocks of c symbols.
uint64_t table_bits(uint32_t sigma, uint32_t k, uint64_t c) {
    uint64_t entries = 1;
    for (uint32_t i = 0; i <= k; ++i) {
        entries *= sigma;
        if (entries > (1ull << 40)) return UINT64_MAX;
    }
    return entries * width_bits(2 * c + sigma);
}

}  // namespace

uint64_t growth_block_size(uint64_t b, uint32_t sigma) {
    const uint64_t shift = b / std::max(1u, sigma);
    if (shift >= 48) throw BudgetError("growth schedule block size overflows");
    return 4096ull << shift;
}

ChosenOrder choose_order(const SymString& block, uint32_t sigma, uint32_t k_max) {
    ChosenOrder best;
    bool have = false;
    for (uint32_t k = 0; k <= k_max; ++k) {
        BitBuffer bits;
        try {
            bits = ac_encode_order(block, sigma, k);
        } catch (const BudgetError&) {
            break;  // model table no longer fits; larger k only gets worse
        }
        if (!have || bits.bit_size() < best.bits.bit_size()) {
            best.k = k;
            best.bits = std::move(bits);
            have = true;
        }
    }
    if (!have) throw BudgetError("no model order fits the table cap");
    return best;
}

std::vector<uint8_t> block_compress_stream(StreamMachine& m, StreamId id, uint32_t sigma,
                                           const BlockCompressOptions& opt) {
    if (sigma == 0) throw InvalidInputError("alphabet size must be positive");
    const uint64_t n = m.stream_size(id);
    const uint32_t sw = sym_width(sigma);

    uint64_t fixed_c = 0;
    if (opt.length_known) {
        fixed_c = opt.block_size ? opt.block_size
                                 : std::max<uint64_t>(1, static_cast<uint64_t>(ceil_log2(n)) *
                                                             ceil_log2(n));
        if (fixed_c >= (1ull << 32)) throw BudgetError("block size does not fit the container");
    } else if (opt.block_size) {
        throw InvalidInputError("explicit block size conflicts with the growth schedule");
    }

    std::vector<uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(1);  // version
    put_le(out, n, 8);
    put_le(out, sigma, 2);
    put_le(out, fixed_c, 4);
    const size_t count_pos = out.size();
    put_le(out, 0, 4);  // patched below

    SymString buf;
    uint64_t block_index = 0;
    auto flush = [&](uint64_t c_b) {
        uint32_t k_max = (opt.k_max == kAutoOrder) ? floor_log_base(c_b, std::max(2u, sigma))
                                                   : opt.k_max;
        uint64_t declared = c_b * sw + table_bits(sigma, k_max, c_b);
        if (opt.k_max == kAutoOrder) {
            while (k_max > 0 && declared > m.budget().memory_bits) {
                --k_max;
                declared = c_b * sw + table_bits(sigma, k_max, c_b);
            }
        }
        m.declare_memory(declared);
        const ChosenOrder co = choose_order(buf, sigma, k_max);
        out.push_back(static_cast<uint8_t>(co.k));
        put_le(out, co.bits.bit_size(), 4);
        const auto& payload = co.bits.bytes();
        out.insert(out.end(), payload.begin(), payload.end());
        ++block_index;
        buf.clear();
    };

    uint64_t c_b = opt.length_known ? fixed_c : growth_block_size(0, sigma);
    while (auto rec = m.read_next(id)) {
        if (*rec >= sigma) throw InvalidInputError("symbol outside the declared alphabet");
        buf.push_back(static_cast<Symbol>(*rec));
        if (buf.size() == c_b) {
            flush(c_b);
            c_b = opt.length_known ? fixed_c : growth_block_size(block_index, sigma);
        }
    }
    if (!buf.empty()) flush(c_b);
    m.rewind(id);

    if (block_index >= (1ull << 32)) throw BudgetError("too many blocks for the container");
    out[count_pos] = static_cast<uint8_t>(block_index & 0xff);
    out[count_pos + 1] = static_cast<uint8_t>((block_index >> 8) & 0xff);
    out[count_pos + 2] = static_cast<uint8_t>((block_index >> 16) & 0xff);
    out[count_pos + 3] = static_cast<uint8_t>((block_index >> 24) & 0xff);
    return out;
}

std::vector<uint8_t> block_compress(StreamMachine& m, const SymString& s, uint32_t sigma,
                                    const BlockCompressOptions& opt) {
    occ(s, sigma);  // validates symbols before the stream is attached
    std::vector<uint64_t> recs(s.begin(), s.end());
    const StreamId id = m.attach_stream(recs, sym_width(sigma));
    return block_compress_stream(m, id, sigma, opt);
}

namespace {

struct HeaderWalk {
    uint64_t n = 0;
    uint32_t sigma = 0;
    uint64_t c = 0;
    uint64_t count = 0;
    size_t pos = 0;
};

HeaderWalk read_header(const std::vector<uint8_t>& container) {
    HeaderWalk h;
    if (container.size() < kGlobalHeaderBytes) throw FormatError("container truncated");
    for (int i = 0; i < 4; ++i)
        if (container[i] != static_cast<uint8_t>(kMagic[i]))
            throw FormatError("bad container magic");
    h.pos = 4;
    const uint8_t version = container[h.pos++];
    if (version != 1) throw FormatError("unsupported container version");
    h.n = get_le(container, h.pos, 8);
    h.sigma = static_cast<uint32_t>(get_le(container, h.pos, 2));
    if (h.sigma == 0) throw FormatError("bad alphabet size");
    h.c = get_le(container, h.pos, 4);
    h.count = get_le(container, h.pos, 4);
    return h;
}

}  // namespace

SymString block_decompress(const std::vector<uint8_t>& container) {
    HeaderWalk h = read_header(container);
    SymString out;
    out.reserve(h.n);
    uint64_t done = 0;
    for (uint64_t b = 0; b < h.count; ++b) {
        const std::string where = "block " + std::to_string(b);
        const uint64_t c_b = h.c ? h.c : growth_block_size(b, h.sigma);
        const uint64_t plain_len = std::min(c_b, h.n - done);
        if (plain_len == 0) throw FormatError(where + ": exceeds the declared length");
        if (h.pos + 5 > container.size()) throw DecodeError(where + ": header truncated");
        const uint32_t k = container[h.pos++];
        const uint64_t bit_len = get_le(container, h.pos, 4);
        const uint64_t byte_len = (bit_len + 7) / 8;
        if (h.pos + byte_len > container.size())
            throw DecodeError(where + ": payload truncated");
        std::vector<uint8_t> payload(container.begin() + h.pos,
                                     container.begin() + h.pos + byte_len);
        h.pos += byte_len;
        SymString block;
        try {
            block = ac_decode_order(BitBuffer::from_bytes(payload, bit_len), plain_len,
                                    h.sigma, k);
        } catch (const FormatError&) {
            throw DecodeError(where + ": corrupt payload");
        }
        out.insert(out.end(), block.begin(), block.end());
        done += plain_len;
    }
    if (done != h.n) throw DecodeError("container shorter than the declared length");
    if (h.pos != container.size()) throw FormatError("trailing bytes after the last block");
    return out;
}

ContainerInfo parse_container(const std::vector<uint8_t>& container) {
    HeaderWalk h = read_header(container);
    ContainerInfo info;
    info.n = h.n;
    info.sigma = h.sigma;
    info.block_size = h.c;
    uint64_t done = 0;
    for (uint64_t b = 0; b < h.count; ++b) {
        const uint64_t c_b = h.c ? h.c : growth_block_size(b, h.sigma);
        const uint64_t plain_len = std::min(c_b, h.n - done);
        if (h.pos + 5 > container.size())
            throw DecodeError("block " + std::to_string(b) + ": header truncated");
        BlockInfo bi;
        bi.k = container[h.pos++];
        bi.payload_bits = get_le(container, h.pos, 4);
        bi.plain_len = plain_len;
        h.pos += (bi.payload_bits + 7) / 8;
        if (h.pos > container.size())
            throw DecodeError("block " + std::to_string(b) + ": payload truncated");
        info.blocks.push_back(bi);
        done += plain_len;
    }
    return info;
}

}  // namespace rws
