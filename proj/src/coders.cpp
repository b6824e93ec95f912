#include "rws/coders.hpp"

#include <algorithm>
#include <cstring>

namespace rws {

// --- move-to-front ---------------------------------------------------------

SymString mtf_encode(const SymString& s, uint32_t sigma) {
    occ(s, sigma);  // validate symbols
    std::vector<Symbol> list(sigma);
    for (uint32_t i = 0; i < sigma; ++i) list[i] = static_cast<Symbol>(i);
    SymString out;
    out.reserve(s.size());
    for (Symbol c : s) {
        uint32_t pos = 0;
        while (list[pos] != c) ++pos;
        out.push_back(static_cast<Symbol>(pos));
        for (uint32_t j = pos; j > 0; --j) list[j] = list[j - 1];
        list[0] = c;
    }
    return out;
}

SymString mtf_decode(const SymString& indices, uint32_t sigma) {
    std::vector<Symbol> list(sigma);
    for (uint32_t i = 0; i < sigma; ++i) list[i] = static_cast<Symbol>(i);
    SymString out;
    out.reserve(indices.size());
    for (Symbol idx : indices) {
        if (idx >= sigma) throw DecodeError("move-to-front index out of range");
        const Symbol c = list[idx];
        out.push_back(c);
        for (uint32_t j = idx; j > 0; --j) list[j] = list[j - 1];
        list[0] = c;
    }
    return out;
}

// --- zero-run + gamma layer ------------------------------------------------

BitBuffer rle_gamma_encode(const SymString& indices) {
    BitBuffer out;
    size_t i = 0;
    while (i < indices.size()) {
        if (indices[i] == 0) {
            size_t run = 1;
            while (i + run < indices.size() && indices[i + run] == 0) ++run;
            gamma_encode(out, 1);    // escape: the one-bit code
            gamma_encode(out, run);  // run length
            i += run;
        } else {
            gamma_encode(out, static_cast<uint64_t>(indices[i]) + 1);
            ++i;
        }
    }
    return out;
}

SymString rle_gamma_decode(BitReader& in, uint64_t count) {
    SymString out;
    out.reserve(count);
    while (out.size() < count) {
        const uint64_t v = gamma_decode(in);
        if (v == 1) {
            const uint64_t run = gamma_decode(in);
            if (run == 0 || out.size() + run > count)
                throw DecodeError("zero run overflows the declared symbol count");
            out.insert(out.end(), run, 0);
        } else {
            const uint64_t idx = v - 1;
            if (idx > 0xFFFF) throw DecodeError("index out of range");
            out.push_back(static_cast<Symbol>(idx));
        }
    }
    return out;
}

// --- range coder -----------------------------------------------------------

namespace {

constexpr uint32_t kTop = 1u << 24;

// Carry-propagating range encoder, parameterized over the byte sink.
template <typename Sink>
class RangeEncoderT {
public:
    explicit RangeEncoderT(Sink sink) : sink_(std::move(sink)) {}

    void encode(uint32_t cum, uint32_t freq, uint32_t total) {
        const uint32_t r = range_ / total;
        low_ += static_cast<uint64_t>(cum) * r;
        range_ = freq * r;
        while (range_ < kTop) {
            shift_low();
            range_ <<= 8;
        }
    }

    void flush() {
        // Settle on the most zero-aligned value inside [low, low + range):
        // trailing zero bytes need not be stored, because the decoder reads
        // past-the-end bytes as zero and reconstructs the same value.
        for (uint32_t t = 32; t > 0; --t) {
            const uint64_t mask = (1ull << t) - 1;
            const uint64_t v = (low_ + mask) & ~mask;
            if (v < low_ + range_) {
                low_ = v;
                break;
            }
        }
        flushing_ = true;
        for (int i = 0; i < 5; ++i) shift_low();
        while (!tail_.empty() && tail_.back() == 0) tail_.pop_back();
        for (uint8_t b : tail_) sink_(b);
        tail_.clear();
    }

private:
    void emit(uint8_t b) {
        if (flushing_) tail_.push_back(b);
        else sink_(b);
    }

    void shift_low() {
        if (static_cast<uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
            const uint8_t carry = static_cast<uint8_t>(low_ >> 32);
            uint8_t b = cache_;
            do {
                emit(static_cast<uint8_t>(b + carry));
                b = 0xFF;
            } while (--cache_size_ != 0);
            cache_ = static_cast<uint8_t>(low_ >> 24);
        }
        ++cache_size_;
        low_ = static_cast<uint64_t>(static_cast<uint32_t>(low_) << 8);
    }

    Sink sink_;
    uint64_t low_ = 0;
    uint32_t range_ = 0xFFFFFFFFu;
    uint8_t cache_ = 0;
    uint64_t cache_size_ = 1;
    bool flushing_ = false;
    std::vector<uint8_t> tail_;
};

// Matching decoder, parameterized over the byte source (negative = end).
template <typename Source>
class RangeDecoderT {
public:
    explicit RangeDecoderT(Source source) : source_(std::move(source)) {
        for (int i = 0; i < 5; ++i) code_ = (code_ << 8) | next_byte();
    }

    uint32_t threshold(uint32_t total) {
        r_ = range_ / total;
        const uint32_t t = code_ / r_;
        return t >= total ? total - 1 : t;
    }

    void consume(uint32_t cum, uint32_t freq) {
        code_ -= cum * r_;
        range_ = freq * r_;
        while (range_ < kTop) {
            code_ = (code_ << 8) | next_byte();
            range_ <<= 8;
        }
    }

private:
    uint8_t next_byte() {
        const int b = source_();
        return b < 0 ? 0 : static_cast<uint8_t>(b);
    }

    Source source_;
    uint32_t range_ = 0xFFFFFFFFu;
    uint32_t code_ = 0;
    uint32_t r_ = 1;
};

struct VecSink {
    std::vector<uint8_t>* out;
    void operator()(uint8_t b) const { out->push_back(b); }
};

struct VecSource {
    const std::vector<uint8_t>* in;
    size_t pos = 0;
    int operator()() { return pos < in->size() ? in->at(pos++) : -1; }
};

// Frequency limit before counts are halved; keeps range-coder truncation
// waste negligible while leaving headroom above the alphabet floor.
uint32_t freq_limit(uint32_t sigma) { return std::max(8192u, 4u * sigma); }

// Add-one-half estimator over [0, sigma) with Fenwick-indexed frequencies
// 2c+1 (order-0 path).
class KtFenwick {
public:
    explicit KtFenwick(uint32_t sigma)
        : sigma_(sigma), counts_(sigma, 0), tree_(sigma + 1, 0), log_(ceil_log2(sigma + 1)) {
        rebuild();
    }

    uint32_t total() const { return total_; }

    void stats(Symbol sym, uint32_t& cum, uint32_t& freq) const {
        cum = prefix(sym);
        freq = 2 * counts_[sym] + 1;
    }

    // Largest sym with prefix(sym) <= t; outputs its cum too.
    Symbol find(uint32_t t, uint32_t& cum, uint32_t& freq) const {
        uint32_t pos = 0;
        uint32_t rem = t;
        for (uint32_t pw = 1u << log_; pw != 0; pw >>= 1) {
            const uint32_t next = pos + pw;
            if (next <= sigma_ && tree_[next] <= rem) {
                pos = next;
                rem -= tree_[next];
            }
        }
        cum = t - rem;
        freq = 2 * counts_[pos] + 1;
        return static_cast<Symbol>(pos);
    }

    void update(Symbol sym) {
        ++counts_[sym];
        add(sym + 1, 2);
        total_ += 2;
        if (total_ > freq_limit(sigma_)) {
            for (uint32_t i = 0; i < sigma_; ++i) counts_[i] >>= 1;
            rebuild();
        }
    }

private:
    uint32_t prefix(uint32_t n) const {  // sum of freqs of symbols < n
        uint32_t s = 0;
        for (uint32_t i = n; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

    void add(uint32_t i, uint32_t delta) {
        for (; i <= sigma_; i += i & (~i + 1)) tree_[i] += delta;
    }

    void rebuild() {
        std::fill(tree_.begin(), tree_.end(), 0);
        total_ = 0;
        for (uint32_t i = 0; i < sigma_; ++i) {
            const uint32_t f = 2 * counts_[i] + 1;
            add(i + 1, f);
            total_ += f;
        }
    }

    uint32_t sigma_;
    std::vector<uint32_t> counts_;
    std::vector<uint32_t> tree_;
    uint32_t log_;
    uint32_t total_ = 0;
};

// Order-k tables with epoch-tagged entries so resetting between blocks is
// O(1).  One cache per thread, re-used across calls with the same (sigma, k).
struct OrderKTables {
    uint32_t sigma = 0;
    uint32_t k = 0;
    uint64_t contexts = 0;  // sigma^k
    std::vector<uint32_t> cnt, cnt_epoch;      // sigma^(k+1) follower counts
    std::vector<uint32_t> ctx_tot, ctx_epoch;  // sigma^k per-context totals
    uint32_t epoch = 0;

    void prepare(uint32_t sg, uint32_t kk) {
        if (sigma == sg && k == kk && epoch != 0xFFFFFFFFu) {
            ++epoch;
            return;
        }
        uint64_t ctxs = 1;
        for (uint32_t i = 0; i < kk; ++i) {
            ctxs *= sg;
            if (ctxs > (1ull << 22))
                throw BudgetError("context order too large for in-memory tables");
        }
        if (ctxs * sg > (1ull << 22))
            throw BudgetError("context order too large for in-memory tables");
        sigma = sg;
        k = kk;
        contexts = ctxs;
        cnt.assign(ctxs * sg, 0);
        cnt_epoch.assign(ctxs * sg, 0);
        ctx_tot.assign(ctxs, 0);
        ctx_epoch.assign(ctxs, 0);
        epoch = 1;
    }

    uint32_t count_at(uint64_t idx) const { return cnt_epoch[idx] == epoch ? cnt[idx] : 0; }

    uint32_t context_total(uint64_t ctx) const {
        return ctx_epoch[ctx] == epoch ? ctx_tot[ctx] : 0;
    }

    void bump(uint64_t ctx, Symbol sym) {
        const uint64_t idx = ctx * sigma + sym;
        cnt[idx] = count_at(idx) + 1;
        cnt_epoch[idx] = epoch;
        ctx_tot[ctx] = context_total(ctx) + 1;
        ctx_epoch[ctx] = epoch;
        if (2 * ctx_tot[ctx] + sigma > freq_limit(sigma)) {
            uint32_t tot = 0;
            for (uint32_t a = 0; a < sigma; ++a) {
                const uint64_t j = ctx * sigma + a;
                const uint32_t c = count_at(j) >> 1;
                cnt[j] = c;
                cnt_epoch[j] = epoch;
                tot += c;
            }
            ctx_tot[ctx] = tot;
        }
    }

    void stats(uint64_t ctx, Symbol sym, uint32_t& cum, uint32_t& freq, uint32_t& total) const {
        uint32_t acc = 0;
        for (uint32_t a = 0; a < sym; ++a) acc += 2 * count_at(ctx * sigma + a) + 1;
        cum = acc;
        freq = 2 * count_at(ctx * sigma + sym) + 1;
        total = 2 * context_total(ctx) + sigma;
    }

    Symbol find(uint64_t ctx, uint32_t t, uint32_t& cum, uint32_t& freq) const {
        uint32_t acc = 0;
        for (uint32_t a = 0;; ++a) {
            const uint32_t f = 2 * count_at(ctx * sigma + a) + 1;
            if (acc + f > t || a + 1 == sigma) {
                cum = acc;
                freq = f;
                return static_cast<Symbol>(a);
            }
            acc += f;
        }
    }
};

thread_local OrderKTables g_order_k_tables;

}  // namespace

BitBuffer ac_encode(const SymString& s, uint32_t sigma) {
    occ(s, sigma);  // validate symbols
    if (s.empty()) return {};
    std::vector<uint8_t> bytes;
    bytes.reserve(s.size() / 4 + 16);
    RangeEncoderT<VecSink> enc(VecSink{&bytes});
    KtFenwick model(sigma);
    for (Symbol c : s) {
        uint32_t cum, freq;
        model.stats(c, cum, freq);
        enc.encode(cum, freq, model.total());
        model.update(c);
    }
    enc.flush();
    const size_t nbits = bytes.size() * 8;
    return BitBuffer::from_bytes(std::move(bytes), nbits);
}

SymString ac_decode(const BitBuffer& buf, uint64_t n, uint32_t sigma) {
    SymString out;
    if (n == 0) return out;
    out.reserve(n);
    RangeDecoderT<VecSource> dec(VecSource{&buf.bytes()});
    KtFenwick model(sigma);
    for (uint64_t i = 0; i < n; ++i) {
        const uint32_t t = dec.threshold(model.total());
        uint32_t cum, freq;
        const Symbol sym = model.find(t, cum, freq);
        dec.consume(cum, freq);
        model.update(sym);
        out.push_back(sym);
    }
    return out;
}

BitBuffer ac_encode_order(const SymString& s, uint32_t sigma, uint32_t k) {
    if (k == 0) return ac_encode(s, sigma);
    occ(s, sigma);  // validate symbols
    if (s.empty()) return {};
    OrderKTables& tab = g_order_k_tables;
    tab.prepare(sigma, k);
    std::vector<uint8_t> bytes;
    RangeEncoderT<VecSink> enc(VecSink{&bytes});
    uint64_t ctx = 0;
    for (Symbol c : s) {
        uint32_t cum, freq, total;
        tab.stats(ctx, c, cum, freq, total);
        enc.encode(cum, freq, total);
        tab.bump(ctx, c);
        ctx = (ctx * sigma + c) % tab.contexts;
    }
    enc.flush();
    const size_t nbits = bytes.size() * 8;
    return BitBuffer::from_bytes(std::move(bytes), nbits);
}

SymString ac_decode_order(const BitBuffer& buf, uint64_t n, uint32_t sigma, uint32_t k) {
    if (k == 0) return ac_decode(buf, n, sigma);
    SymString out;
    if (n == 0) return out;
    out.reserve(n);
    OrderKTables& tab = g_order_k_tables;
    tab.prepare(sigma, k);
    RangeDecoderT<VecSource> dec(VecSource{&buf.bytes()});
    uint64_t ctx = 0;
    for (uint64_t i = 0; i < n; ++i) {
        const uint32_t total = 2 * tab.context_total(ctx) + sigma;
        const uint32_t t = dec.threshold(total);
        uint32_t cum, freq;
        const Symbol sym = tab.find(ctx, t, cum, freq);
        dec.consume(cum, freq);
        tab.bump(ctx, sym);
        ctx = (ctx * sigma + sym) % tab.contexts;
        out.push_back(sym);
    }
    return out;
}

uint64_t ac_cost_bits(const SymString& s, uint32_t sigma, uint32_t k) {
    return ac_encode_order(s, sigma, k).bit_size();
}

// --- incremental coding ----------------------------------------------------

struct AdaptiveDecoder::Impl {
    RangeDecoderT<ByteSourceFn> dec;
    KtFenwick model;
    Impl(ByteSourceFn source, uint32_t sigma) : dec(std::move(source)), model(sigma) {}
};

AdaptiveDecoder::AdaptiveDecoder(ByteSourceFn source, uint32_t sigma)
    : impl_(new Impl(std::move(source), sigma)) {}

AdaptiveDecoder::~AdaptiveDecoder() { delete impl_; }

Symbol AdaptiveDecoder::next() {
    const uint32_t t = impl_->dec.threshold(impl_->model.total());
    uint32_t cum, freq;
    const Symbol sym = impl_->model.find(t, cum, freq);
    impl_->dec.consume(cum, freq);
    impl_->model.update(sym);
    return sym;
}

struct AdaptiveEncoder::Impl {
    RangeEncoderT<ByteSinkFn> enc;
    KtFenwick model;
    uint32_t sigma;
    bool any = false;
    bool finished = false;
    Impl(ByteSinkFn sink, uint32_t sg) : enc(std::move(sink)), model(sg), sigma(sg) {}
};

AdaptiveEncoder::AdaptiveEncoder(ByteSinkFn sink, uint32_t sigma)
    : impl_(new Impl(std::move(sink), sigma)) {}

AdaptiveEncoder::~AdaptiveEncoder() { delete impl_; }

void AdaptiveEncoder::push(Symbol sym) {
    if (impl_->finished) throw Error("encoder already finished");
    if (sym >= impl_->sigma) throw InvalidInputError("symbol outside the declared alphabet");
    uint32_t cum, freq;
    impl_->model.stats(sym, cum, freq);
    impl_->enc.encode(cum, freq, impl_->model.total());
    impl_->model.update(sym);
    impl_->any = true;
}

void AdaptiveEncoder::finish() {
    if (impl_->finished) return;
    impl_->finished = true;
    if (impl_->any) impl_->enc.flush();
}

}  // namespace rws
