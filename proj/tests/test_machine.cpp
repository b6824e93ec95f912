#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "rws/bits.hpp"
#include "rws/errors.hpp"
#include "rws/machine.hpp"

namespace {

rws::StreamMachine make_machine(uint64_t memory_bits, uint32_t max_streams = 2) {
    rws::MachineBudget b;
    b.memory_bits = memory_bits;
    b.max_streams = max_streams;
    return rws::StreamMachine(b);
}

}  // namespace

TEST_SUITE("machine") {

TEST_CASE("reads and writes move the head without closing a pass") {
    rws::StreamMachine m = make_machine(1024);
    const rws::StreamId a = m.attach_stream({1, 2, 3}, 8);

    CHECK(m.read_next(a) == 1);
    CHECK(m.read_next(a) == 2);
    CHECK(m.read_next(a) == 3);
    CHECK(m.at_end(a));
    CHECK(m.read_next(a) == std::nullopt);

    rws::UsageReport r = m.report();
    CHECK(r.total_passes == 0);
    CHECK(r.records_read == 3);
    CHECK(r.records_written == 0);
}

TEST_CASE("rewind after movement closes one pass; idle rewinds are free") {
    rws::StreamMachine m = make_machine(1024);
    const rws::StreamId a = m.attach_stream({1, 2, 3}, 8);

    m.rewind(a);  // no movement yet: free
    CHECK(m.report().total_passes == 0);

    m.read_next(a);
    m.rewind(a);
    CHECK(m.report().total_passes == 1);
    CHECK(m.report().per_stream_passes[0] == 1);

    m.rewind(a);  // still at the start, nothing moved
    m.rewind(a);
    CHECK(m.report().total_passes == 1);
}

TEST_CASE("mid-tape direction reversal closes the current traversal") {
    rws::StreamMachine m = make_machine(1024);
    const rws::StreamId a = m.attach_stream({10, 20, 30}, 8);

    m.read_next(a);
    m.read_next(a);
    m.set_backward(a, true);  // reversal after movement: one pass
    CHECK(m.report().total_passes == 1);

    m.set_backward(a, true);  // no direction change: free
    CHECK(m.report().total_passes == 1);

    CHECK(m.read_next(a) == 20);
    CHECK(m.read_next(a) == 10);
    CHECK(m.at_end(a));
    m.set_backward(a, false);  // reversal after backward movement
    CHECK(m.report().total_passes == 2);
}

TEST_CASE("clear_stream closes a pass only after movement") {
    rws::StreamMachine m = make_machine(1024);
    const rws::StreamId a = m.attach_stream({5, 6}, 8);
    m.clear_stream(a);
    CHECK(m.report().total_passes == 0);
    CHECK(m.stream_size(a) == 0);

    m.write_next(a, 9);
    m.clear_stream(a);
    CHECK(m.report().total_passes == 1);
}

TEST_CASE("attach is unmetered, load_stream costs one write traversal") {
    rws::StreamMachine m = make_machine(1024);
    const rws::StreamId a = m.attach_stream({1, 2, 3, 4}, 8);
    CHECK(m.report().total_passes == 0);
    CHECK(m.report().records_written == 0);

    const rws::StreamId b = m.ensure_stream(1, 8);
    m.load_stream(b, {7, 8, 9});
    rws::UsageReport r = m.report();
    CHECK(r.total_passes == 1);
    CHECK(r.per_stream_passes[b] == 1);
    CHECK(r.records_written == 3);
    CHECK(m.read_next(b) == 7);  // head is back at the start
    (void)a;
}

TEST_CASE("record width is enforced on writes") {
    rws::StreamMachine m = make_machine(1024);
    const rws::StreamId a = m.attach_stream({}, 4);
    m.write_next(a, 15);
    CHECK_THROWS_AS(m.write_next(a, 16), rws::Error);
}

TEST_CASE("stream limit and dense ids") {
    rws::StreamMachine m = make_machine(1024, 2);
    m.ensure_stream(0, 8);
    m.ensure_stream(1, 8);
    CHECK_THROWS_AS(m.attach_stream({}, 8), rws::BudgetError);
    CHECK_THROWS_AS(m.ensure_stream(5, 8), rws::Error);

    rws::StreamMachine one = make_machine(1024, 1);
    one.ensure_stream(0, 8);
    CHECK_THROWS_AS(one.ensure_stream(1, 8), rws::BudgetError);
}

TEST_CASE("declared memory is tracked and budget-checked") {
    rws::StreamMachine m = make_machine(100);
    m.declare_memory(40);
    m.declare_memory(10);
    CHECK(m.report().peak_declared_memory_bits == 40);
    CHECK_THROWS_AS(m.declare_memory(101), rws::BudgetError);
    CHECK(m.report().peak_declared_memory_bits == 40);
}

TEST_CASE("pass limit aborts the traversal that would exceed it") {
    rws::MachineBudget b;
    b.memory_bits = 1024;
    b.max_streams = 2;
    b.pass_limit = 2;
    rws::StreamMachine m{b};
    const rws::StreamId a = m.attach_stream({1, 2}, 8);
    m.read_next(a);
    m.rewind(a);
    m.read_next(a);
    m.rewind(a);
    m.read_next(a);
    CHECK_THROWS_AS(m.rewind(a), rws::PassLimitError);
}

TEST_CASE("reset zeroes meters and contents") {
    rws::StreamMachine m = make_machine(1024);
    const rws::StreamId a = m.attach_stream({1, 2, 3}, 8);
    m.read_next(a);
    m.rewind(a);
    m.declare_memory(64);
    m.reset();
    rws::UsageReport r = m.report();
    CHECK(r.total_passes == 0);
    CHECK(r.per_stream_passes[0] == 0);
    CHECK(r.records_read == 0);
    CHECK(r.records_written == 0);
    CHECK(r.peak_declared_memory_bits == 0);
    CHECK(m.stream_size(a) == 0);
}

TEST_CASE("report serializes as a five-field object") {
    rws::StreamMachine m = make_machine(256);
    const rws::StreamId a = m.attach_stream({3, 1}, 8);
    m.read_next(a);
    m.rewind(a);
    const nlohmann::json j = nlohmann::json::parse(m.report().to_json());
    REQUIRE(j.is_object());
    CHECK(j.size() == 5);
    CHECK(j.at("per_stream_passes").get<std::vector<uint64_t>>() ==
          std::vector<uint64_t>{1});
    CHECK(j.at("total_passes") == 1);
    CHECK(j.at("peak_declared_memory_bits") == 0);
    CHECK(j.at("records_read") == 1);
    CHECK(j.at("records_written") == 0);
}

TEST_CASE("merge sort needs room for two records") {
    rws::StreamMachine m = make_machine(63);
    const rws::StreamId a = m.attach_stream({1, 2, 3}, 32);
    const rws::StreamId b = m.attach_stream({}, 32);
    CHECK_THROWS_AS(m.merge_sort(a, b), rws::BudgetError);
}

TEST_CASE("merge sort of an empty stream is free") {
    rws::StreamMachine m = make_machine(1024);
    const rws::StreamId a = m.attach_stream({}, 8);
    const rws::StreamId b = m.attach_stream({}, 8);
    const rws::SortResult res = m.merge_sort(a, b);
    CHECK(res.merge_rounds == 0);
    CHECK(res.passes_used == 0);
    CHECK(m.report().total_passes == 0);
}

TEST_CASE("merge sort pass accounting at N=1024, R=64") {
    rws::StreamMachine m = make_machine(64 * 16);
    std::mt19937_64 rng(7);
    std::vector<uint64_t> data(1024);
    for (uint64_t& v : data) v = rng() & 0xFFFF;
    const rws::StreamId a = m.attach_stream(data, 16);
    const rws::StreamId b = m.attach_stream({}, 16);

    const rws::SortResult res = m.merge_sort(a, b);
    CHECK(res.merge_rounds == 4);  // ceil(log2(1024 / 64)) = 4
    CHECK(res.passes_used == 10);

    rws::UsageReport r = m.report();
    CHECK(r.total_passes == 10);
    CHECK(r.per_stream_passes[0] == 5);
    CHECK(r.per_stream_passes[1] == 5);
    CHECK(r.peak_declared_memory_bits == 64 * 16);

    std::vector<uint64_t> expect = data;
    std::sort(expect.begin(), expect.end());
    CHECK(m.peek(res.output) == expect);
    CHECK(m.stream_size(res.output == a ? b : a) == 0);
}

TEST_CASE("merge sort matches a stable sort over a size grid") {
    std::mt19937_64 rng(99);
    for (uint64_t n : {0ull, 1ull, 2ull, 3ull, 7ull, 64ull, 100ull, 257ull, 1024ull}) {
        for (uint64_t r_cap : {2ull, 3ull, 8ull, 64ull}) {
            const uint32_t rb = 24;
            rws::StreamMachine m = make_machine(r_cap * rb);
            std::vector<uint64_t> data(n);
            for (uint64_t& v : data) v = rng() & 0xFFFFFF;
            const rws::StreamId a = m.attach_stream(data, rb);
            const rws::StreamId b = m.attach_stream({}, rb);

            // Sort by the low byte only, so ties exercise stability.
            auto key = [](uint64_t v) { return v & 0xFF; };
            const rws::SortResult res = m.merge_sort(a, b, key);

            std::vector<uint64_t> expect = data;
            std::stable_sort(expect.begin(), expect.end(),
                             [&](uint64_t x, uint64_t y) { return key(x) < key(y); });
            CHECK(m.peek(res.output) == expect);
            CHECK(m.stream_size(res.output == a ? b : a) == 0);

            if (n > 0) {
                const uint64_t runs = (n + r_cap - 1) / r_cap;
                const uint32_t rounds = runs <= 1 ? 0 : rws::ceil_log2(runs);
                CHECK(res.merge_rounds == rounds);
                CHECK(res.passes_used == 2ull * (rounds + 1));
                CHECK(m.report().total_passes == res.passes_used);
            }
        }
    }
}

TEST_CASE("merge sort rejects sorting a stream into itself") {
    rws::StreamMachine m = make_machine(1024);
    const rws::StreamId a = m.attach_stream({2, 1}, 8);
    CHECK_THROWS_AS(m.merge_sort(a, a), rws::Error);
}

TEST_CASE("stream snapshots round trip through disk") {
    const std::vector<uint64_t> records = {0, 1, 513, 1023, 77};
    const std::string path = "machine_test_snapshot.bin";
    rws::save_stream_snapshot(records, 10, path);
    const rws::StreamImage img = rws::load_stream_snapshot(path);
    CHECK(img.record_bits == 10);
    CHECK(img.records == records);
    std::remove(path.c_str());

    rws::save_stream_snapshot({}, 9, path);
    const rws::StreamImage empty = rws::load_stream_snapshot(path);
    CHECK(empty.record_bits == 9);
    CHECK(empty.records.empty());
    std::remove(path.c_str());
}

TEST_CASE("snapshot loading rejects malformed files") {
    const std::string path = "machine_test_badsnap.bin";
    std::vector<uint8_t> raw;
    rws::put_le(raw, 4, 8);
    rws::put_le(raw, 16, 2);
    raw.push_back(0xAB);  // 4 records of 16 bits need 8 bytes, only 1 given
    rws::write_file_bytes(path, raw);
    CHECK_THROWS_AS(rws::load_stream_snapshot(path), rws::FormatError);

    raw.clear();
    rws::put_le(raw, 0, 8);
    rws::put_le(raw, 0, 2);  // record width 0 is invalid
    rws::write_file_bytes(path, raw);
    CHECK_THROWS_AS(rws::load_stream_snapshot(path), rws::FormatError);
    std::remove(path.c_str());
}

}  // TEST_SUITE
