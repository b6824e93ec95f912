#include "rws/machine.hpp"

#include <algorithm>
#include <cstring>

#include "json.hpp"

#include "rws/bits.hpp"

namespace rws {

std::string UsageReport::to_json() const {
    nlohmann::ordered_json j;
    j["per_stream_passes"] = per_stream_passes;
    j["total_passes"] = total_passes;
    j["peak_declared_memory_bits"] = peak_declared_memory_bits;
    j["records_read"] = records_read;
    j["records_written"] = records_written;
    return j.dump();
}

StreamMachine::StreamMachine(MachineBudget budget) : budget_(budget) {}

StreamMachine::Stream& StreamMachine::at(StreamId id) {
    if (id >= streams_.size()) throw Error("bad stream id");
    return streams_[id];
}

const StreamMachine::Stream& StreamMachine::at(StreamId id) const {
    if (id >= streams_.size()) throw Error("bad stream id");
    return streams_[id];
}

StreamId StreamMachine::attach_stream(std::vector<uint64_t> contents, uint32_t record_bits) {
    if (streams_.size() >= budget_.max_streams)
        throw BudgetError("stream limit reached (" + std::to_string(budget_.max_streams) + ")");
    if (record_bits < 1 || record_bits > 64)
        throw Error("record width must be in [1, 64]");
    Stream s;
    s.data = std::move(contents);
    s.record_bits = record_bits;
    streams_.push_back(std::move(s));
    return static_cast<StreamId>(streams_.size() - 1);
}

StreamId StreamMachine::ensure_stream(StreamId id, uint32_t record_bits) {
    if (id < streams_.size()) {
        Stream& s = streams_[id];
        s.data.clear();
        s.head = 0;
        s.backward = false;
        s.moved = false;
        s.record_bits = record_bits;
        return id;
    }
    if (id != streams_.size()) throw Error("ensure_stream ids must be dense");
    return attach_stream({}, record_bits);
}

void StreamMachine::close_pass(Stream& s) {
    if (!s.moved) return;
    if (budget_.pass_limit && total_passes_ + 1 > *budget_.pass_limit)
        throw PassLimitError("pass limit (" + std::to_string(*budget_.pass_limit) + ") exceeded");
    s.moved = false;
    ++s.passes;
    ++total_passes_;
}

void StreamMachine::rewind(StreamId id) {
    Stream& s = at(id);
    close_pass(s);
    s.head = 0;
    s.backward = false;
}

void StreamMachine::set_backward(StreamId id, bool backward) {
    Stream& s = at(id);
    if (s.backward != backward) {
        close_pass(s);  // direction reversal ends the current traversal
        s.backward = backward;
    }
}

bool StreamMachine::at_end(StreamId id) const {
    const Stream& s = at(id);
    return s.backward ? s.head == 0 : s.head == s.data.size();
}

std::optional<uint64_t> StreamMachine::read_next(StreamId id) {
    Stream& s = at(id);
    if (s.backward) {
        if (s.head == 0) return std::nullopt;
        --s.head;
        s.moved = true;
        ++records_read_;
        return s.data[s.head];
    }
    if (s.head == s.data.size()) return std::nullopt;
    const uint64_t v = s.data[s.head];
    ++s.head;
    s.moved = true;
    ++records_read_;
    return v;
}

void StreamMachine::check_record_width(const Stream& s, uint64_t v) const {
    if (s.record_bits < 64 && (v >> s.record_bits) != 0)
        throw Error("record value does not fit the stream's record width");
}

void StreamMachine::write_next(StreamId id, uint64_t record) {
    Stream& s = at(id);
    check_record_width(s, record);
    if (s.backward) {
        if (s.head == 0) throw Error("write past the start of a stream");
        --s.head;
        s.data[s.head] = record;
    } else {
        if (s.head == s.data.size()) s.data.push_back(record);
        else s.data[s.head] = record;
        ++s.head;
    }
    s.moved = true;
    ++records_written_;
}

void StreamMachine::clear_stream(StreamId id) {
    Stream& s = at(id);
    close_pass(s);
    s.data.clear();
    s.head = 0;
    s.backward = false;
}

void StreamMachine::declare_memory(uint64_t bits) {
    if (bits > budget_.memory_bits)
        throw BudgetError("declared " + std::to_string(bits) + " bits exceeds budget of " +
                          std::to_string(budget_.memory_bits) + " bits");
    peak_declared_bits_ = std::max(peak_declared_bits_, bits);
}

UsageReport StreamMachine::report() const {
    UsageReport r;
    r.per_stream_passes.reserve(streams_.size());
    for (const Stream& s : streams_) r.per_stream_passes.push_back(s.passes);
    r.total_passes = total_passes_;
    r.peak_declared_memory_bits = peak_declared_bits_;
    r.records_read = records_read_;
    r.records_written = records_written_;
    return r;
}

void StreamMachine::reset() {
    for (Stream& s : streams_) {
        s.data.clear();
        s.head = 0;
        s.backward = false;
        s.moved = false;
        s.passes = 0;
    }
    peak_declared_bits_ = 0;
    records_read_ = 0;
    records_written_ = 0;
    total_passes_ = 0;
}

void StreamMachine::load_stream(StreamId id, const std::vector<uint64_t>& records) {
    Stream& s = at(id);
    for (uint64_t v : records) check_record_width(s, v);
    s.data.assign(records.begin(), records.end());
    s.head = s.data.size();
    if (!records.empty()) {
        s.moved = true;
        records_written_ += records.size();
    }
    rewind(id);
}

namespace {

// Merge src[a_begin, a_end) with src[b_begin, b_end) into dst, stable in the
// sense that ties take from the first (earlier) run.
template <typename Key>
void merge_runs(const std::vector<uint64_t>& src, size_t a, size_t a_end, size_t b,
                size_t b_end, std::vector<uint64_t>& dst, const Key& key) {
    while (a < a_end && b < b_end) {
        if (key(src[a]) <= key(src[b])) dst.push_back(src[a++]);
        else dst.push_back(src[b++]);
    }
    dst.insert(dst.end(), src.begin() + static_cast<ptrdiff_t>(a),
               src.begin() + static_cast<ptrdiff_t>(a_end));
    dst.insert(dst.end(), src.begin() + static_cast<ptrdiff_t>(b),
               src.begin() + static_cast<ptrdiff_t>(b_end));
}

struct IdentityKey {
    uint64_t operator()(uint64_t v) const { return v; }
};

}  // namespace

SortResult StreamMachine::merge_sort(StreamId input, StreamId scratch, const SortKeyFn& key) {
    Stream& in = at(input);
    Stream& sc = at(scratch);
    if (input == scratch) throw Error("merge sort needs two distinct streams");

    const uint32_t rb = in.record_bits;
    const uint64_t n = in.data.size();
    const uint64_t cap = budget_.memory_bits / rb;
    if (cap < 2)
        throw BudgetError("merge sort needs room for at least 2 records (budget " +
                          std::to_string(budget_.memory_bits) + " bits, record width " +
                          std::to_string(rb) + ")");
    const uint64_t r_cap = cap;
    declare_memory(r_cap * rb);

    sc.record_bits = rb;
    SortResult result;
    result.output = scratch;
    if (n == 0) {
        sc.data.clear();
        sc.head = 0;
        in.head = 0;
        return result;
    }

    const uint64_t runs = (n + r_cap - 1) / r_cap;
    const uint32_t rounds = runs <= 1 ? 0 : ceil_log2(runs);

    // A phase traverses one source and one destination stream once each; the
    // counters are settled in bulk, which is equivalent to per-record calls.
    auto account_phase = [&](Stream& rd, Stream& wr) {
        records_read_ += n;
        records_written_ += n;
        rd.moved = true;
        wr.moved = true;
        close_pass(rd);
        close_pass(wr);
        rd.head = 0;
        wr.head = 0;
    };

    // Run formation: sort blocks of up to R records in working memory, writing
    // the runs to the scratch stream.
    sc.data.clear();
    sc.data.reserve(in.data.size());
    sc.data.assign(in.data.begin(), in.data.end());
    if (key) {
        for (uint64_t beg = 0; beg < n; beg += r_cap) {
            const uint64_t end = std::min(n, beg + r_cap);
            std::stable_sort(sc.data.begin() + static_cast<ptrdiff_t>(beg),
                             sc.data.begin() + static_cast<ptrdiff_t>(end),
                             [&](uint64_t a, uint64_t b) { return key(a) < key(b); });
        }
    } else {
        for (uint64_t beg = 0; beg < n; beg += r_cap) {
            const uint64_t end = std::min(n, beg + r_cap);
            std::stable_sort(sc.data.begin() + static_cast<ptrdiff_t>(beg),
                             sc.data.begin() + static_cast<ptrdiff_t>(end));
        }
    }
    account_phase(in, sc);
    in.data.clear();

    // Merge rounds: ping-pong between the two streams, doubling run length.
    // The source is read via one forward cursor per run of the current pair,
    // each cell exactly once, so a round costs one traversal of each stream.
    Stream* src = &sc;
    Stream* dst = &in;
    StreamId src_id = scratch, dst_id = input;
    uint64_t run_len = r_cap;
    for (uint32_t round = 0; round < rounds; ++round) {
        dst->data.clear();
        dst->data.reserve(n);
        dst->record_bits = rb;
        if (key) {
            for (uint64_t beg = 0; beg < n; beg += 2 * run_len) {
                const uint64_t mid = std::min(n, beg + run_len);
                const uint64_t end = std::min(n, beg + 2 * run_len);
                merge_runs(src->data, beg, mid, mid, end, dst->data,
                           [&](uint64_t v) { return key(v); });
            }
        } else {
            for (uint64_t beg = 0; beg < n; beg += 2 * run_len) {
                const uint64_t mid = std::min(n, beg + run_len);
                const uint64_t end = std::min(n, beg + 2 * run_len);
                merge_runs(src->data, beg, mid, mid, end, dst->data, IdentityKey{});
            }
        }
        account_phase(*src, *dst);
        src->data.clear();
        std::swap(src, dst);
        std::swap(src_id, dst_id);
        run_len *= 2;
    }

    result.output = src_id;  // after the final swap, src holds the data
    result.merge_rounds = rounds;
    result.passes_used = 2ull * (rounds + 1);
    return result;
}

void save_stream_snapshot(const std::vector<uint64_t>& records, uint32_t record_bits,
                          const std::string& path) {
    if (record_bits < 1 || record_bits > 64) throw Error("record width must be in [1, 64]");
    BitBuffer bits;
    for (uint64_t v : records) bits.push_bits(v, record_bits);
    std::vector<uint8_t> out;
    put_le(out, records.size(), 8);
    put_le(out, record_bits, 2);
    out.insert(out.end(), bits.bytes().begin(), bits.bytes().end());
    write_file_bytes(path, out);
}

StreamImage load_stream_snapshot(const std::string& path) {
    const std::vector<uint8_t> data = read_file_bytes(path);
    size_t pos = 0;
    const uint64_t count = get_le(data, pos, 8);
    const uint32_t rb = static_cast<uint32_t>(get_le(data, pos, 2));
    if (rb < 1 || rb > 64) throw FormatError("bad record width in snapshot");
    const uint64_t total_bits = count * rb;
    if ((data.size() - pos) * 8 < total_bits) throw FormatError("snapshot truncated");
    BitBuffer bits = BitBuffer::from_bytes(
        std::vector<uint8_t>(data.begin() + static_cast<ptrdiff_t>(pos), data.end()),
        total_bits);
    BitReader rd(bits);
    StreamImage img;
    img.record_bits = rb;
    img.records.reserve(count);
    for (uint64_t i = 0; i < count; ++i) img.records.push_back(rd.read_bits(rb));
    return img;
}

}  // namespace rws
