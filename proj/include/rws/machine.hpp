#pragma once

// ---------------------------------------------------------------------------
// External-streams machine: a fixed working-memory budget plus a small number
// of sequential-access streams (tapes).  Each stream has a single head; the
// machine meters head traversals (passes), records moved, and the declared
// working-set size, and enforces the configured budgets.
//
// Pass accounting convention: a stream's pass counter increments exactly when
// a rewind or a direction reversal occurs after at least one head movement
// since the previous boundary.  A mid-tape reversal therefore closes a pass.
// Operations in this library rewind their streams when a phase completes, so
// one full forward read of a stream costs exactly one pass.
// ---------------------------------------------------------------------------

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rws/errors.hpp"

namespace rws {

using StreamId = uint32_t;

struct MachineBudget {
    uint64_t memory_bits = 0;                  // working-memory budget in bits
    uint32_t max_streams = 2;                  // number of attachable streams
    std::optional<uint64_t> pass_limit = {};   // cap on total passes, if any
};

// Cumulative resource usage; serializable as a five-field JSON object.
struct UsageReport {
    std::vector<uint64_t> per_stream_passes;
    uint64_t total_passes = 0;
    uint64_t peak_declared_memory_bits = 0;
    uint64_t records_read = 0;
    uint64_t records_written = 0;

    std::string to_json() const;
};

// Result of a two-stream merge sort.
struct SortResult {
    StreamId output = 0;        // stream now holding the sorted records
    uint32_t merge_rounds = 0;  // ceil(log2(ceil(N/R))) for N > 0
    uint64_t passes_used = 0;   // exactly 2 * (merge_rounds + 1) for N > 0
};

// Optional key extractor for sorting; records compare by key(record), ties
// broken stably.  An empty function means "compare the raw record values".
using SortKeyFn = std::function<uint64_t(uint64_t)>;

class StreamMachine {
public:
    explicit StreamMachine(MachineBudget budget);

    const MachineBudget& budget() const { return budget_; }

    // --- streams ----------------------------------------------------------
    // Attach a new stream pre-loaded with `contents`; head at the start.
    StreamId attach_stream(std::vector<uint64_t> contents, uint32_t record_bits);

    // Reuse-friendly: attach on first use, otherwise clear and re-purpose the
    // stream (capacity kept).  Head at the start, data empty.
    StreamId ensure_stream(StreamId id, uint32_t record_bits);

    uint32_t stream_count() const { return static_cast<uint32_t>(streams_.size()); }
    uint64_t stream_size(StreamId id) const { return at(id).data.size(); }
    uint32_t record_bits(StreamId id) const { return at(id).record_bits; }

    // --- head movement ----------------------------------------------------
    void rewind(StreamId id);
    void set_backward(StreamId id, bool backward);
    bool at_end(StreamId id) const;

    // Read the record under the head and advance (returns nothing at the
    // stream boundary).  Honors the current direction.
    std::optional<uint64_t> read_next(StreamId id);

    // Write at the head and advance; appends when the head is at the end.
    void write_next(StreamId id, uint64_t record);

    // Erase contents (head to start).  Counts as a rewind for pass purposes.
    void clear_stream(StreamId id);

    // --- budgets ----------------------------------------------------------
    // Record the caller's current working-set size; errors beyond the budget.
    void declare_memory(uint64_t bits);

    UsageReport report() const;

    // Zero all meters and stream contents, keeping buffer capacity, so one
    // machine can process a corpus without reallocating.
    void reset();

    // --- sorting ----------------------------------------------------------
    // Balanced two-stream merge sort of `input`, using `scratch` as the
    // ping-pong partner.  Destroys both streams' prior contents; the sorted
    // records end up on the returned stream.  With room for R records
    // (R = memory_bits / record_bits, R >= 2 required), run formation makes
    // runs of length R and each merge round halves the run count, so the
    // number of merge rounds is ceil(log2(ceil(N/R))) and the total passes
    // across both streams equal 2 * (merge_rounds + 1).  Stable.
    //
    // A merge round reads the source stream through two forward-only run
    // cursors; every cell is visited exactly once per round, so the round is
    // metered as one traversal of each stream.
    SortResult merge_sort(StreamId input, StreamId scratch, const SortKeyFn& key = {});

    // Direct access to a stream's records for snapshot serialization and for
    // loading results out of the machine (does not move the head).
    const std::vector<uint64_t>& peek(StreamId id) const { return at(id).data; }

    // Bulk load/append without per-record calls; meters one write traversal.
    void load_stream(StreamId id, const std::vector<uint64_t>& records);

private:
    struct Stream {
        std::vector<uint64_t> data;
        uint64_t head = 0;
        bool backward = false;
        bool moved = false;          // any movement since the last boundary
        uint64_t passes = 0;
        uint32_t record_bits = 64;
    };

    Stream& at(StreamId id);
    const Stream& at(StreamId id) const;
    void close_pass(Stream& s);      // boundary: increment if moved
    void check_record_width(const Stream& s, uint64_t v) const;

    MachineBudget budget_;
    std::vector<Stream> streams_;
    uint64_t peak_declared_bits_ = 0;
    uint64_t records_read_ = 0;
    uint64_t records_written_ = 0;
    uint64_t total_passes_ = 0;
};

// Operation-style spelling of the sorter.
inline SortResult two_stream_merge_sort(StreamMachine& m, StreamId input,
                                        StreamId scratch, const SortKeyFn& key = {}) {
    return m.merge_sort(input, scratch, key);
}

// --- stream snapshots ------------------------------------------------------
// On-disk form: 8-byte LE record count, 2-byte LE record width in bits, then
// the records packed MSB-first at that width, zero-padded to a whole byte.
struct StreamImage {
    std::vector<uint64_t> records;
    uint32_t record_bits = 0;
};

void save_stream_snapshot(const std::vector<uint64_t>& records, uint32_t record_bits,
                          const std::string& path);
StreamImage load_stream_snapshot(const std::string& path);

}  // namespace rws
