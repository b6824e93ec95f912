#include "rws/bwt.hpp"

#include <algorithm>

#include "rws/bits.hpp"
#include "rws/coders.hpp"

namespace rws {

namespace {

constexpr StreamId other(StreamId id) { return id ^ 1u; }

// Width of the order-value alphabet: sentinel -> 0, symbol c -> c + 1, so the
// largest value is sigma.
uint32_t ord_width(uint32_t sigma) { return std::max(1u, width_bits(sigma)); }

void check_input(const SymString& s, uint32_t sigma) {
    occ(s, sigma);  // validates sigma > 0 and symbol range
    if (s.size() > kMaxMachineBwtLength)
        throw BudgetError("input exceeds the machine transform cap of 2^21 - 2 symbols");
}

struct Doubling {
    StreamId pairs = 0;  // stream of (position << w) | rank records
    uint32_t w = 0;      // field width: values up to n + 1 fit
};

// Prefix doubling over s + sentinel.  Terminates with all ranks distinct;
// rank r of position p then means the suffix at p is the r-th smallest.
Doubling run_suffix_doubling(StreamMachine& m, const SymString& s, uint32_t sigma) {
    const uint64_t n = s.size();
    const uint64_t len = n + 1;  // with sentinel
    const uint32_t w = width_bits(len);
    const uint64_t mask = (w == 64) ? ~0ull : ((1ull << w) - 1);
    const uint32_t ob = ord_width(sigma);

    m.declare_memory(512);  // scan state: a few registers

    // Round 0: records (order_value << w) | position, then sort and assign
    // dense ranks by scanning groups.
    StreamId a = m.ensure_stream(0, ob + w);
    m.ensure_stream(1, ob + w);
    for (uint64_t p = 1; p <= len; ++p) {
        const uint64_t ov = (p <= n) ? static_cast<uint64_t>(s[p - 1]) + 1 : 0;
        m.write_next(a, (ov << w) | p);
    }
    m.rewind(a);
    SortResult sr = m.merge_sort(a, static_cast<StreamId>(1));

    StreamId src = sr.output;
    StreamId pairs = m.ensure_stream(other(src), 2 * w);
    bool all_distinct = true;
    {
        uint64_t prev_key = ~0ull;
        uint64_t rank = 0;
        while (auto rec = m.read_next(src)) {
            const uint64_t key = *rec >> w;
            const uint64_t p = *rec & mask;
            if (key != prev_key) {
                ++rank;
                prev_key = key;
            } else {
                all_distinct = false;
            }
            m.write_next(pairs, (p << w) | rank);
        }
        m.rewind(src);
        m.rewind(pairs);
    }

    uint64_t d = 1;
    while (!all_distinct) {
        // Delivery records: key (position << 1 | tag) in the high bits so the
        // sort groups each position's own rank (tag 0) with the rank arriving
        // from position + d (tag 1).
        StreamId deliv = m.ensure_stream(other(pairs), 2 * w + 1);
        while (auto rec = m.read_next(pairs)) {
            const uint64_t p = *rec >> w;
            const uint64_t r = *rec & mask;
            m.write_next(deliv, ((p << 1) << w) | r);
            if (p > d) m.write_next(deliv, ((((p - d) << 1) | 1) << w) | r);
        }
        m.rewind(pairs);
        m.rewind(deliv);
        sr = m.merge_sort(deliv, pairs);

        // Zip each position's pair of records into (rank, next, position).
        src = sr.output;
        StreamId triples = m.ensure_stream(other(src), 3 * w);
        {
            bool have = false;
            uint64_t p0 = 0, r0 = 0;
            while (auto rec = m.read_next(src)) {
                const uint64_t key = *rec >> w;
                const uint64_t payload = *rec & mask;
                if ((key & 1) == 0) {
                    if (have) m.write_next(triples, (r0 << (2 * w)) | p0);
                    p0 = key >> 1;
                    r0 = payload;
                    have = true;
                } else {
                    m.write_next(triples, (r0 << (2 * w)) | (payload << w) | p0);
                    have = false;
                }
            }
            if (have) m.write_next(triples, (r0 << (2 * w)) | p0);
            m.rewind(src);
            m.rewind(triples);
        }
        sr = m.merge_sort(triples, src);

        // Refine: equal (rank, next) pairs share the new rank.
        src = sr.output;
        pairs = m.ensure_stream(other(src), 2 * w);
        all_distinct = true;
        {
            uint64_t prev_key = ~0ull;
            uint64_t rank = 0;
            while (auto rec = m.read_next(src)) {
                const uint64_t key = *rec >> w;  // (rank, next) combined
                const uint64_t p = *rec & mask;
                if (key != prev_key) {
                    ++rank;
                    prev_key = key;
                } else {
                    all_distinct = false;
                }
                m.write_next(pairs, (p << w) | rank);
            }
            m.rewind(src);
            m.rewind(pairs);
        }

        d <<= 1;
        if (d >= 2 * len && !all_distinct)
            throw Error("internal: rank refinement failed to converge");
    }
    return Doubling{pairs, w};
}

}  // namespace

std::vector<uint32_t> suffix_array_streams(StreamMachine& m, const SymString& s, uint32_t sigma) {
    check_input(s, sigma);
    const Doubling dbl = run_suffix_doubling(m, s, sigma);
    const uint32_t w = dbl.w;
    const uint64_t mask = (1ull << w) - 1;

    StreamId keyed = m.ensure_stream(other(dbl.pairs), 2 * w);
    while (auto rec = m.read_next(dbl.pairs)) {
        const uint64_t p = *rec >> w;
        const uint64_t r = *rec & mask;
        m.write_next(keyed, (r << w) | p);
    }
    m.rewind(dbl.pairs);
    m.rewind(keyed);
    const SortResult sr = m.merge_sort(keyed, dbl.pairs);

    std::vector<uint32_t> sa;
    sa.reserve(s.size() + 1);
    while (auto rec = m.read_next(sr.output)) sa.push_back(static_cast<uint32_t>(*rec & mask));
    m.rewind(sr.output);
    return sa;
}

SymString bwt_forward(StreamMachine& m, const SymString& s, uint32_t sigma) {
    check_input(s, sigma);
    const uint64_t n = s.size();
    const uint64_t len = n + 1;
    const Doubling dbl = run_suffix_doubling(m, s, sigma);
    const uint32_t w = dbl.w;
    const uint64_t mask = (1ull << w) - 1;
    const uint32_t sw = ord_width(sigma);        // holds symbol values up to sigma
    const uint32_t pw = std::max(w, sw);         // payload: rank or symbol
    const uint64_t pmask = (1ull << pw) - 1;

    // Join ranks with the preceding character: queries keyed by the position
    // holding that character, character records keyed by their position.
    StreamId join = m.ensure_stream(other(dbl.pairs), w + 1 + pw);
    while (auto rec = m.read_next(dbl.pairs)) {
        const uint64_t p = *rec >> w;
        const uint64_t r = *rec & mask;
        const uint64_t q = (p > 1) ? p - 1 : len;
        m.write_next(join, (q << (1 + pw)) | (1ull << pw) | r);
    }
    for (uint64_t q = 1; q <= len; ++q) {
        const uint64_t sym = (q <= n) ? s[q - 1] : sigma;
        m.write_next(join, (q << (1 + pw)) | sym);
    }
    m.rewind(dbl.pairs);
    m.rewind(join);
    SortResult sr = m.merge_sort(join, dbl.pairs);

    StreamId out_rec = m.ensure_stream(other(sr.output), w + sw);
    {
        uint64_t cur_sym = 0;
        while (auto rec = m.read_next(sr.output)) {
            const uint64_t tag = (*rec >> pw) & 1;
            const uint64_t payload = *rec & pmask;
            if (tag == 0) cur_sym = payload;
            else m.write_next(out_rec, (payload << sw) | cur_sym);
        }
        m.rewind(sr.output);
        m.rewind(out_rec);
    }
    sr = m.merge_sort(out_rec, other(out_rec));

    SymString out;
    out.reserve(len);
    const uint64_t smask = (1ull << sw) - 1;
    while (auto rec = m.read_next(sr.output))
        out.push_back(static_cast<Symbol>(*rec & smask));
    m.rewind(sr.output);
    return out;
}

namespace {

// Pointer-doubling rounds shared by the inverse transform and permutation
// ranking.  `cur` holds (x << 2w) | (jump << w) | dist triples; after
// ceil(log2(M)) rounds every element on the start element's cycle carries its
// exact distance, and every other element carries the saturation value M.
StreamId run_pointer_doubling(StreamMachine& m, StreamId cur, uint32_t w, uint64_t count) {
    const uint64_t mask = (1ull << w) - 1;
    const uint32_t rounds = count <= 1 ? 0 : ceil_log2(count);
    for (uint32_t h = 0; h < rounds; ++h) {
        StreamId deliv = m.ensure_stream(other(cur), 3 * w + 2);
        while (auto rec = m.read_next(cur)) {
            const uint64_t x = *rec >> (2 * w);
            const uint64_t j = (*rec >> w) & mask;
            const uint64_t dist = *rec & mask;
            m.write_next(deliv, (x << (2 * w + 1)) | (j << w) | dist);
            m.write_next(deliv, (j << (2 * w + 1)) | (1ull << (2 * w)) | (x << w) | dist);
        }
        m.rewind(cur);
        m.rewind(deliv);
        const SortResult sr = m.merge_sort(deliv, cur);

        StreamId next = m.ensure_stream(other(sr.output), 3 * w);
        {
            uint64_t jy = 0, dy = 0;
            while (auto rec = m.read_next(sr.output)) {
                const uint64_t tag = (*rec >> (2 * w)) & 1;
                const uint64_t f1 = (*rec >> w) & mask;
                const uint64_t f2 = *rec & mask;
                if (tag == 0) {
                    jy = f1;
                    dy = f2;
                } else {
                    m.write_next(next, (f1 << (2 * w)) | (jy << w) | std::min(f2 + dy, count));
                }
            }
            m.rewind(sr.output);
            m.rewind(next);
        }
        cur = next;
    }
    return cur;
}

}  // namespace

SymString bwt_inverse(StreamMachine& m, const SymString& t, uint32_t sigma) {
    if (sigma == 0) throw InvalidInputError("alphabet size must be positive");
    const uint64_t len = t.size();
    if (len == 0) throw InvalidInputError("transform image cannot be empty");
    if (len - 1 > kMaxMachineBwtLength)
        throw BudgetError("input exceeds the machine transform cap of 2^21 - 2 symbols");
    uint64_t sentinel_pos = 0;
    uint64_t sentinel_count = 0;
    for (uint64_t i = 0; i < len; ++i) {
        if (t[i] > sigma) throw InvalidInputError("symbol outside the declared alphabet");
        if (t[i] == sigma) {
            sentinel_pos = i + 1;
            ++sentinel_count;
        }
    }
    if (sentinel_count != 1)
        throw InvalidInputError("transform image must contain the sentinel exactly once");

    const uint32_t w = width_bits(len);
    const uint64_t mask = (1ull << w) - 1;

    // Stable rank of each image position: count per order value, prefix-sum,
    // then a second scan assigns base + seen.  Counters are the only working
    // memory beyond scan registers.
    std::vector<uint64_t> cnt(sigma + 1, 0);
    m.declare_memory((sigma + 2) * static_cast<uint64_t>(width_bits(len)) + 512);
    for (uint64_t i = 0; i < len; ++i) {
        const uint64_t ov = (t[i] == sigma) ? 0 : static_cast<uint64_t>(t[i]) + 1;
        ++cnt[ov];
    }
    std::vector<uint64_t> base(sigma + 1, 0);
    {
        uint64_t acc = 1;
        for (uint32_t ov = 0; ov <= sigma; ++ov) {
            base[ov] = acc;
            acc += cnt[ov];
        }
    }

    StreamId cur = m.ensure_stream(0, 3 * w);
    m.ensure_stream(1, 3 * w);
    std::fill(cnt.begin(), cnt.end(), 0);
    for (uint64_t i = 1; i <= len; ++i) {
        const uint64_t ov = (t[i - 1] == sigma) ? 0 : static_cast<uint64_t>(t[i - 1]) + 1;
        const uint64_t pi = base[ov] + cnt[ov]++;
        if (i == sentinel_pos) m.write_next(cur, (i << (2 * w)) | (i << w));  // dist 0 anchor
        else m.write_next(cur, (i << (2 * w)) | (pi << w) | 1);
    }
    m.rewind(cur);

    cur = run_pointer_doubling(m, cur, w, len);

    // Join distances with the image characters, order by distance, and check
    // that the distances are exactly 0..len-1 (single cycle = genuine image).
    const uint32_t sw = ord_width(sigma);
    const uint32_t pw = std::max(w, sw);
    StreamId join = m.ensure_stream(other(cur), w + 1 + pw);
    while (auto rec = m.read_next(cur)) {
        const uint64_t x = *rec >> (2 * w);
        const uint64_t dist = *rec & mask;
        m.write_next(join, (x << (1 + pw)) | (1ull << pw) | dist);
    }
    for (uint64_t q = 1; q <= len; ++q)
        m.write_next(join, (q << (1 + pw)) | t[q - 1]);
    m.rewind(cur);
    m.rewind(join);
    SortResult sr = m.merge_sort(join, cur);

    StreamId byd = m.ensure_stream(other(sr.output), w + sw);
    {
        const uint64_t pmask = (1ull << pw) - 1;
        uint64_t cur_sym = 0;
        while (auto rec = m.read_next(sr.output)) {
            const uint64_t tag = (*rec >> pw) & 1;
            const uint64_t payload = *rec & pmask;
            if (tag == 0) cur_sym = payload;
            else m.write_next(byd, (payload << sw) | cur_sym);
        }
        m.rewind(sr.output);
        m.rewind(byd);
    }
    sr = m.merge_sort(byd, other(byd));

    SymString out;
    out.reserve(len - 1);
    const uint64_t smask = (1ull << sw) - 1;
    uint64_t idx = 0;
    while (auto rec = m.read_next(sr.output)) {
        const uint64_t dist = *rec >> sw;
        if (dist != idx)
            throw InvalidInputError("input is not the transform image of any string");
        if (idx > 0) out.push_back(static_cast<Symbol>(*rec & smask));
        ++idx;
    }
    m.rewind(sr.output);
    if (idx != len)
        throw InvalidInputError("input is not the transform image of any string");
    return out;
}

std::vector<uint32_t> rank_permutation(StreamMachine& m, const std::vector<uint32_t>& pi) {
    const uint64_t count = pi.size();
    if (count == 0) return {};
    const uint32_t w = width_bits(count);
    if (3 * w + 2 > 64)
        throw BudgetError("permutation exceeds the machine cap");
    for (uint32_t v : pi)
        if (v < 1 || v > count) throw InvalidInputError("not a permutation of 1..M");

    // Bijection check on the machine: sort the values, expect 1..M.
    StreamId vals = m.ensure_stream(0, w);
    m.ensure_stream(1, w);
    for (uint32_t v : pi) m.write_next(vals, v);
    m.rewind(vals);
    SortResult sr = m.merge_sort(vals, static_cast<StreamId>(1));
    {
        uint64_t expect = 1;
        while (auto rec = m.read_next(sr.output)) {
            if (*rec != expect) throw InvalidInputError("not a permutation of 1..M");
            ++expect;
        }
        m.rewind(sr.output);
    }

    // Orbit of element 1 under pi: distances via pointer doubling on the
    // inverse map (records (x, pi^{-1}(x), 1), anchor at x = 1).
    const uint64_t mask = (1ull << w) - 1;
    StreamId cur = m.ensure_stream(0, 3 * w);
    m.ensure_stream(1, 3 * w);
    for (uint64_t i = 1; i <= count; ++i) {
        const uint64_t x = pi[i - 1];
        if (x == 1) m.write_next(cur, (1ull << (2 * w)) | (1ull << w));
        else m.write_next(cur, (x << (2 * w)) | (i << w) | 1);
    }
    m.rewind(cur);
    cur = run_pointer_doubling(m, cur, w, count);

    // Cycle length = number of anchored (absorbed) elements.
    uint64_t cycle = 0;
    while (auto rec = m.read_next(cur)) {
        if ((*rec & mask) < count) ++cycle;
    }
    m.rewind(cur);
    if (cycle == 0) throw Error("internal: orbit of the start element is empty");

    std::vector<uint32_t> out;
    out.reserve(count);
    if (cycle == count) {
        StreamId byd = m.ensure_stream(other(cur), 2 * w);
        while (auto rec = m.read_next(cur)) {
            const uint64_t x = *rec >> (2 * w);
            const uint64_t dist = *rec & mask;
            m.write_next(byd, (dist << w) | x);
        }
        m.rewind(cur);
        m.rewind(byd);
        sr = m.merge_sort(byd, cur);
        while (auto rec = m.read_next(sr.output))
            out.push_back(static_cast<uint32_t>(*rec & mask));
        m.rewind(sr.output);
        return out;
    }

    // Shorter cycle: join output slots j = 0..M-1 with the orbit entry at
    // distance j mod cycle.
    StreamId deliv = m.ensure_stream(other(cur), 2 * w + 1);
    while (auto rec = m.read_next(cur)) {
        const uint64_t x = *rec >> (2 * w);
        const uint64_t dist = *rec & mask;
        if (dist < count) m.write_next(deliv, (dist << (1 + w)) | x);
    }
    for (uint64_t j = 0; j < count; ++j)
        m.write_next(deliv, ((j % cycle) << (1 + w)) | (1ull << w) | j);
    m.rewind(cur);
    m.rewind(deliv);
    sr = m.merge_sort(deliv, cur);

    StreamId byj = m.ensure_stream(other(sr.output), 2 * w);
    {
        uint64_t cur_x = 0;
        while (auto rec = m.read_next(sr.output)) {
            const uint64_t tag = (*rec >> w) & 1;
            const uint64_t payload = *rec & mask;
            if (tag == 0) cur_x = payload;
            else m.write_next(byj, (payload << w) | cur_x);
        }
        m.rewind(sr.output);
        m.rewind(byj);
    }
    sr = m.merge_sort(byj, other(byj));
    while (auto rec = m.read_next(sr.output))
        out.push_back(static_cast<uint32_t>(*rec & mask));
    m.rewind(sr.output);
    return out;
}

SymString bwt_logspace_oracle(const SymString& s, uint32_t sigma) {
    occ(s, sigma);  // validate
    const uint64_t n = s.size();
    const uint64_t len = n + 1;
    const Symbol* d = s.data();
    SymString out(len, 0);
    for (uint64_t i = 1; i <= len; ++i) {
        uint64_t rank = 1;
        if (i < len) {
            const Symbol ci = d[i - 1];
            ++rank;  // the empty suffix (sentinel alone) is always smaller
            for (uint64_t j = 0; j < n; ++j)
                rank += d[j] < ci;
            // Suffixes tying on the first character are settled by extending
            // the comparison; lockstep keeps the cursor gap fixed and nonzero,
            // so at most one side can run out, and that side carries the low
            // sentinel.
            for (uint64_t j = 1; j <= n; ++j) {
                if (j == i || d[j - 1] != ci) continue;
                uint64_t x = i, y = j;  // 0-based cursors past the tied head
                while (x < n && y < n && d[x] == d[y]) {
                    ++x;
                    ++y;
                }
                if (y == n || (x < n && d[y] < d[x])) ++rank;
            }
        }
        const Symbol prev = (i > 1) ? s[i - 2] : static_cast<Symbol>(sigma);
        out[rank - 1] = prev;
    }
    return out;
}

// --- entropy-only pipeline -------------------------------------------------

namespace {

constexpr char kEoMagic[4] = {'R', 'W', 'S', 'E'};

// Streaming move-to-front list over order values 0..sigma (sentinel-first).
struct MtfList {
    std::vector<Symbol> list;
    explicit MtfList(uint32_t sigma_incl) {
        list.resize(sigma_incl);
        for (uint32_t i = 0; i < sigma_incl; ++i) list[i] = static_cast<Symbol>(i);
    }
    uint32_t encode(Symbol v) {
        uint32_t pos = 0;
        while (list[pos] != v) ++pos;
        for (uint32_t j = pos; j > 0; --j) list[j] = list[j - 1];
        list[0] = v;
        return pos;
    }
    Symbol decode(uint32_t idx) {
        const Symbol v = list[idx];
        for (uint32_t j = idx; j > 0; --j) list[j] = list[j - 1];
        list[0] = v;
        return v;
    }
};

}  // namespace

std::vector<uint8_t> entropy_only_compress(StreamMachine& m, const SymString& s, uint32_t sigma) {
    check_input(s, sigma);
    const uint64_t n = s.size();
    const SymString t = bwt_forward(m, s, sigma);

    std::vector<uint8_t> container;
    container.reserve(32 + n / 4);
    container.insert(container.end(), kEoMagic, kEoMagic + 4);
    container.push_back(1);  // version
    put_le(container, n, 8);
    put_le(container, sigma, 2);

    // Coding phase: the transform rides on one stream; the coder's bits leave
    // on the other as 1-bit records.
    const uint32_t sw = ord_width(sigma);
    StreamId a = m.ensure_stream(0, sw);
    StreamId b = m.ensure_stream(1, 1);
    for (Symbol c : t) m.write_next(a, (c == sigma) ? 0ull : static_cast<uint64_t>(c) + 1);
    m.rewind(a);
    m.declare_memory((static_cast<uint64_t>(sigma) + 2) * 32 + 1024);

    AdaptiveEncoder enc(
        [&](uint8_t byte) {
            container.push_back(byte);
            for (int i = 7; i >= 0; --i) m.write_next(b, (byte >> i) & 1u);
        },
        2);
    auto put_gamma = [&](uint64_t v) {
        const uint32_t width = width_bits(v);
        for (uint32_t i = 0; i + 1 < width; ++i) enc.push(0);
        for (uint32_t i = width; i-- > 0;) enc.push((v >> i) & 1u);
    };
    MtfList mtf(sigma + 1);
    uint64_t run = 0;
    while (auto rec = m.read_next(a)) {
        const uint32_t idx = mtf.encode(static_cast<Symbol>(*rec));
        if (idx == 0) {
            ++run;
        } else {
            if (run > 0) {
                put_gamma(1);
                put_gamma(run);
                run = 0;
            }
            put_gamma(static_cast<uint64_t>(idx) + 1);
        }
    }
    if (run > 0) {
        put_gamma(1);
        put_gamma(run);
    }
    enc.finish();
    m.rewind(a);
    m.rewind(b);
    return container;
}

SymString entropy_only_decompress(StreamMachine& m, const std::vector<uint8_t>& container) {
    size_t pos = 0;
    if (container.size() < 15) throw FormatError("container truncated");
    for (int i = 0; i < 4; ++i)
        if (container[i] != static_cast<uint8_t>(kEoMagic[i]))
            throw FormatError("bad container magic");
    pos = 4;
    const uint8_t version = container[pos++];
    if (version != 1) throw FormatError("unsupported container version");
    const uint64_t n = get_le(container, pos, 8);
    const uint32_t sigma = static_cast<uint32_t>(get_le(container, pos, 2));
    if (sigma == 0) throw FormatError("bad alphabet size");
    if (n > kMaxMachineBwtLength)
        throw BudgetError("input exceeds the machine transform cap of 2^21 - 2 symbols");
    const uint64_t len = n + 1;

    // Payload bits ride on one stream; the recovered transform on the other.
    StreamId a = m.ensure_stream(0, 1);
    StreamId b = m.ensure_stream(1, ord_width(sigma));
    for (size_t i = pos; i < container.size(); ++i)
        for (int j = 7; j >= 0; --j) m.write_next(a, (container[i] >> j) & 1u);
    m.rewind(a);
    m.declare_memory((static_cast<uint64_t>(sigma) + 2) * 32 + 1024);

    AdaptiveDecoder dec(
        [&]() -> int {
            int byte = 0;
            for (int j = 0; j < 8; ++j) {
                auto bit = m.read_next(a);
                if (!bit) return -1;
                byte = (byte << 1) | static_cast<int>(*bit);
            }
            return byte;
        },
        2);
    auto get_gamma = [&]() -> uint64_t {
        uint32_t zeros = 0;
        while (dec.next() == 0)
            if (++zeros > 63) throw DecodeError("gamma code too long");
        uint64_t v = 1;
        for (uint32_t i = 0; i < zeros; ++i) v = (v << 1) | dec.next();
        return v;
    };

    MtfList mtf(sigma + 1);
    SymString t;
    t.reserve(len);
    auto emit = [&](uint32_t idx) {
        if (idx > sigma) throw DecodeError("move-to-front index out of range");
        const Symbol ov = mtf.decode(idx);
        const Symbol sym = (ov == 0) ? static_cast<Symbol>(sigma) : static_cast<Symbol>(ov - 1);
        t.push_back(sym);
        m.write_next(b, sym);
    };
    while (t.size() < len) {
        const uint64_t v = get_gamma();
        if (v == 1) {
            const uint64_t zrun = get_gamma();
            if (zrun == 0 || t.size() + zrun > len)
                throw DecodeError("zero run overflows the declared length");
            for (uint64_t i = 0; i < zrun; ++i) emit(0);
        } else {
            emit(static_cast<uint32_t>(v - 1));
        }
    }
    m.rewind(a);
    m.rewind(b);

    return bwt_inverse(m, t, sigma);
}

}  // namespace rws
