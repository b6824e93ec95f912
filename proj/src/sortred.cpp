#include "rws/sortred.hpp"

#include <algorithm>

#include "rws/bits.hpp"
#include "rws/bwt.hpp"

namespace rws {

namespace {

bool is_pow2(uint64_t v) { return v >= 1 && (v & (v - 1)) == 0; }

void check_instance(const SortInstance& inst) {
    if (!is_pow2(inst.n) || inst.n < 2)
        throw InvalidInputError("instance count must be a power of two, at least 2");
    if (inst.values.size() != inst.n)
        throw InvalidInputError("instance count does not match its value list");
    const PhraseShape shape = phrase_shape(inst.n);
    if (shape.value_bits < 64) {
        const uint64_t limit = 1ull << shape.value_bits;
        for (uint64_t v : inst.values)
            if (v >= limit) throw InvalidInputError("value does not fit its declared width");
    }
}

}  // namespace

PhraseShape phrase_shape(uint64_t n) {
    if (!is_pow2(n) || n < 2)
        throw InvalidInputError("instance count must be a power of two, at least 2");
    PhraseShape s;
    s.l = floor_log2(n);
    s.value_bits = 2 * s.l;
    s.index_bits = s.l;
    s.pos_bits = ceil_log2(2 * s.l);
    s.phrase_len = 2ull + s.value_bits + s.index_bits + s.pos_bits;
    s.total_len = 2ull * n * s.l * s.phrase_len;
    return s;
}

SortInstance make_instance(const std::vector<uint64_t>& values) {
    uint64_t n = 2;
    while (n < values.size()) n <<= 1;
    for (;;) {
        const uint32_t vb = 2 * floor_log2(n);
        if (vb >= 64) break;
        const uint64_t limit = 1ull << vb;
        if (std::all_of(values.begin(), values.end(), [&](uint64_t v) { return v < limit; }))
            break;
        n <<= 1;
    }
    SortInstance inst;
    inst.n = n;
    inst.values = values;
    const uint32_t vb = 2 * floor_log2(n);
    const uint64_t pad = (vb >= 64) ? ~0ull : (1ull << vb) - 1;
    inst.values.resize(n, pad);
    return inst;
}

SymString encode_instance(const SortInstance& inst) {
    check_instance(inst);
    const PhraseShape shape = phrase_shape(inst.n);
    SymString out;
    out.reserve(shape.total_len);
    auto push_field = [&](uint64_t v, uint32_t width) {
        for (uint32_t b = width; b-- > 0;) out.push_back((v >> b) & 1);
    };
    for (uint64_t i = 1; i <= inst.n; ++i) {
        const uint64_t v = inst.values[i - 1];
        for (uint32_t j = 1; j <= shape.value_bits; ++j) {
            out.push_back((v >> (shape.value_bits - j)) & 1);
            out.push_back(2);
            push_field(v, shape.value_bits);
            push_field(i - 1, shape.index_bits);
            push_field(j - 1, shape.pos_bits);
        }
    }
    if (out.size() != shape.total_len)
        throw Error("internal: encoded length diverged from the closed form");
    return out;
}

std::vector<uint64_t> sort_via_bwt(StreamMachine& m, const SortInstance& inst) {
    check_instance(inst);
    const PhraseShape shape = phrase_shape(inst.n);
    const SymString u = encode_instance(inst);
    const SymString t = bwt_forward(m, u, 3);

    const uint64_t tail_len = 2 * inst.n * shape.l;
    std::vector<uint8_t> bits(tail_len);
    for (uint64_t i = 0; i < tail_len; ++i) {
        const Symbol s = t[t.size() - tail_len + i];
        if (s > 1) throw Error("internal: transform tail contains a non-bit symbol");
        bits[i] = static_cast<uint8_t>(s);
    }
    return decode_sorted(bits, inst.n);
}

std::vector<uint64_t> decode_sorted(const std::vector<uint8_t>& tail_bits, uint64_t n) {
    if (!is_pow2(n) || n < 2)
        throw InvalidInputError("instance count must be a power of two, at least 2");
    const uint32_t l = floor_log2(n);
    if (tail_bits.size() != 2 * n * l)
        throw InvalidInputError("tail length does not match 2 n log2(n) bits");
    std::vector<uint64_t> out(n, 0);
    uint64_t pos = 0;
    for (uint64_t i = 0; i < n; ++i)
        for (uint32_t b = 0; b < 2 * l; ++b) out[i] = (out[i] << 1) | tail_bits[pos++];
    return out;
}

std::vector<uint64_t> sort_numbers(StreamMachine& m, const std::vector<uint64_t>& values) {
    if (values.empty()) return {};
    const SortInstance inst = make_instance(values);
    std::vector<uint64_t> sorted = sort_via_bwt(m, inst);
    sorted.resize(values.size());
    return sorted;
}

}  // namespace rws
