// Command-line front end: every pipeline behind one binary, with machine
// budget flags and a structured usage report per run.
//
// Exit codes: 0 success, 2 usage, 3 budget, 4 pass limit, 5 format,
// 6 decode/invalid input, 1 anything else.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rws/bits.hpp"
#include "rws/block.hpp"
#include "rws/bwt.hpp"
#include "rws/debruijn.hpp"
#include "rws/entropy.hpp"
#include "rws/errors.hpp"
#include "rws/machine.hpp"
#include "rws/period_grammar.hpp"
#include "rws/sortred.hpp"

namespace {

using nlohmann::ordered_json;

struct CommonOpts {
    std::optional<uint64_t> memory_bits;
    std::optional<uint64_t> pass_limit;
    uint32_t streams = 2;
    std::string report_path;
    uint64_t seed = 0;  // accepted and recorded; current subcommands are deterministic
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--memory-bits", c.memory_bits,
                    "Machine working-memory budget in bits (default 64*ceil(log2 n)^2)");
    cmd->add_option("--pass-limit", c.pass_limit, "Abort once total passes would exceed this");
    cmd->add_option("--streams", c.streams, "Number of machine streams (default 2)");
    cmd->add_option("--report", c.report_path,
                    "Write the usage report JSON here instead of standard error");
    cmd->add_option("--seed", c.seed, "Reserved: fixed seed for randomized subcommands");
}

uint64_t default_budget(uint64_t n) {
    const uint64_t lg = rws::ceil_log2(n);
    return std::max<uint64_t>(4096, 64 * lg * lg);
}

rws::StreamMachine make_machine(const CommonOpts& c, uint64_t n) {
    rws::MachineBudget b;
    b.memory_bits = c.memory_bits ? *c.memory_bits : default_budget(n);
    b.max_streams = c.streams;
    b.pass_limit = c.pass_limit;
    return rws::StreamMachine(b);
}

void emit_report(const rws::UsageReport& r, const CommonOpts& c) {
    const std::string doc = r.to_json();
    if (c.report_path.empty()) {
        std::cerr << doc << "\n";
    } else {
        std::ofstream out(c.report_path, std::ios::binary);
        if (!out) throw rws::Error("cannot open report path " + c.report_path);
        out << doc << "\n";
    }
}

rws::SymString bytes_to_syms(const std::vector<uint8_t>& bytes) {
    return rws::SymString(bytes.begin(), bytes.end());
}

std::vector<uint8_t> syms_to_bytes(const rws::SymString& s) {
    std::vector<uint8_t> out;
    out.reserve(s.size());
    for (rws::Symbol v : s) {
        if (v > 255) throw rws::Error("symbol does not fit a byte");
        out.push_back(static_cast<uint8_t>(v));
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rws::Error("cannot open output path " + path);
    out << text;
}

constexpr uint32_t kByteSigma = 256;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Read/write-streams algorithm toolkit"};
    app.require_subcommand(1);

    std::string in_path, out_path;
    CommonOpts common;

    auto* cmd_compress = app.add_subcommand("compress", "Block-compress a byte file");
    uint64_t block_size = 0;
    uint32_t k_max = rws::kAutoOrder;
    cmd_compress->add_option("input", in_path)->required();
    cmd_compress->add_option("output", out_path)->required();
    cmd_compress->add_option("--block-size", block_size, "Symbols per block (default ceil(log2 n)^2)");
    cmd_compress->add_option("--k-max", k_max, "Highest model order to try");
    add_common(cmd_compress, common);

    auto* cmd_decompress = app.add_subcommand("decompress", "Invert `compress`");
    cmd_decompress->add_option("input", in_path)->required();
    cmd_decompress->add_option("output", out_path)->required();
    add_common(cmd_decompress, common);

    auto* cmd_eoc = app.add_subcommand("eo-compress", "Entropy-only pipeline, forward");
    cmd_eoc->add_option("input", in_path)->required();
    cmd_eoc->add_option("output", out_path)->required();
    add_common(cmd_eoc, common);

    auto* cmd_eod = app.add_subcommand("eo-decompress", "Entropy-only pipeline, inverse");
    cmd_eod->add_option("input", in_path)->required();
    cmd_eod->add_option("output", out_path)->required();
    add_common(cmd_eod, common);

    auto* cmd_bwt = app.add_subcommand("bwt", "Block-sorting transform to a stream snapshot");
    cmd_bwt->add_option("input", in_path)->required();
    cmd_bwt->add_option("output", out_path)->required();
    add_common(cmd_bwt, common);

    auto* cmd_unbwt = app.add_subcommand("unbwt", "Invert `bwt` from a stream snapshot");
    cmd_unbwt->add_option("input", in_path)->required();
    cmd_unbwt->add_option("output", out_path)->required();
    add_common(cmd_unbwt, common);

    auto* cmd_entropy = app.add_subcommand("entropy", "Empirical entropy report");
    uint32_t order_k = 2;
    cmd_entropy->add_option("input", in_path)->required();
    cmd_entropy->add_option("output", out_path, "Report path (default: standard output)");
    cmd_entropy->add_option("--k", order_k, "Highest context order to report");
    add_common(cmd_entropy, common);

    auto* cmd_period = app.add_subcommand("period", "Minimum period via the stream machine");
    cmd_period->add_option("input", in_path)->required();
    cmd_period->add_option("output", out_path, "Result path (default: standard output)");
    add_common(cmd_period, common);

    auto* cmd_grammar = app.add_subcommand("grammar", "Periodic straight-line grammar");
    cmd_grammar->add_option("input", in_path)->required();
    cmd_grammar->add_option("output", out_path, "Grammar text path (default: standard output)");
    add_common(cmd_grammar, common);

    auto* cmd_db = app.add_subcommand("debruijn", "Generate or count De Bruijn cycles");
    uint32_t db_sigma = 2, db_k = 1;
    uint64_t repeat_to = 0;
    bool db_count = false;
    cmd_db->add_option("output", out_path, "Output path (default: standard output)");
    cmd_db->add_option("--sigma", db_sigma, "Alphabet size")->required();
    cmd_db->add_option("--k", db_k, "Cycle order")->required();
    cmd_db->add_option("--repeat-to", repeat_to, "Repeat the cycle out to this many symbols");
    cmd_db->add_flag("--count", db_count, "Print the exact cycle count instead");
    add_common(cmd_db, common);

    auto* cmd_sort = app.add_subcommand("sortnums", "Sort integers through the transform");
    cmd_sort->add_option("input", in_path)->required();
    cmd_sort->add_option("output", out_path, "Result path (default: standard output)");
    add_common(cmd_sort, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_compress)) {
            const auto bytes = rws::read_file_bytes(in_path);
            auto m = make_machine(common, bytes.size());
            rws::BlockCompressOptions opt;
            opt.block_size = block_size;
            opt.k_max = k_max;
            const auto out = rws::block_compress(m, bytes_to_syms(bytes), kByteSigma, opt);
            rws::write_file_bytes(out_path, out);
            emit_report(m.report(), common);
        } else if (app.got_subcommand(cmd_decompress)) {
            const auto container = rws::read_file_bytes(in_path);
            const auto s = rws::block_decompress(container);
            rws::write_file_bytes(out_path, syms_to_bytes(s));
            emit_report(rws::UsageReport{}, common);
        } else if (app.got_subcommand(cmd_eoc)) {
            const auto bytes = rws::read_file_bytes(in_path);
            auto m = make_machine(common, bytes.size());
            const auto out =
                rws::entropy_only_compress(m, bytes_to_syms(bytes), kByteSigma);
            rws::write_file_bytes(out_path, out);
            emit_report(m.report(), common);
        } else if (app.got_subcommand(cmd_eod)) {
            const auto container = rws::read_file_bytes(in_path);
            uint64_t n = 0;
            if (container.size() >= 13) {
                size_t pos = 5;
                n = rws::get_le(container, pos, 8);
            }
            auto m = make_machine(common, n);
            const auto s = rws::entropy_only_decompress(m, container);
            rws::write_file_bytes(out_path, syms_to_bytes(s));
            emit_report(m.report(), common);
        } else if (app.got_subcommand(cmd_bwt)) {
            const auto bytes = rws::read_file_bytes(in_path);
            auto m = make_machine(common, bytes.size());
            const auto t = rws::bwt_forward(m, bytes_to_syms(bytes), kByteSigma);
            std::vector<uint64_t> recs(t.begin(), t.end());
            rws::save_stream_snapshot(recs, rws::width_bits(kByteSigma), out_path);
            emit_report(m.report(), common);
        } else if (app.got_subcommand(cmd_unbwt)) {
            const auto img = rws::load_stream_snapshot(in_path);
            if (img.records.empty()) throw rws::FormatError("snapshot holds no records");
            // The sentinel is stored as the largest value present, which is
            // exactly the alphabet size the transform was taken over.
            uint64_t sigma = 0;
            for (uint64_t v : img.records) sigma = std::max(sigma, v);
            auto m = make_machine(common, img.records.size());
            const rws::SymString t(img.records.begin(), img.records.end());
            const auto s = rws::bwt_inverse(m, t, static_cast<uint32_t>(sigma));
            rws::write_file_bytes(out_path, syms_to_bytes(s));
            emit_report(m.report(), common);
        } else if (app.got_subcommand(cmd_entropy)) {
            const auto bytes = rws::read_file_bytes(in_path);
            const auto rep = rws::entropy_report(bytes_to_syms(bytes), order_k, kByteSigma);
            ordered_json j;
            j["n"] = rep.n;
            j["sigma"] = rep.sigma;
            j["h"] = rep.h;
            j["hk_star"] = rep.hk_star;
            const std::string text = j.dump(2) + "\n";
            if (out_path.empty()) std::cout << text;
            else write_text(out_path, text);
            emit_report(rws::UsageReport{}, common);
        } else if (app.got_subcommand(cmd_period)) {
            const auto bytes = rws::read_file_bytes(in_path);
            auto m = make_machine(common, bytes.size());
            const uint64_t p = rws::min_period_streams(m, bytes_to_syms(bytes), kByteSigma);
            const std::string text = std::to_string(p) + "\n";
            if (out_path.empty()) std::cout << text;
            else write_text(out_path, text);
            emit_report(m.report(), common);
        } else if (app.got_subcommand(cmd_grammar)) {
            const auto bytes = rws::read_file_bytes(in_path);
            const auto s = bytes_to_syms(bytes);
            auto m = make_machine(common, bytes.size());
            const uint64_t p = s.empty() ? 0 : rws::min_period_streams(m, s, kByteSigma);
            const auto g = rws::build_periodic_grammar(s, kByteSigma, p);
            const std::string text = rws::grammar_to_text(g);
            if (out_path.empty()) std::cout << text;
            else write_text(out_path, text);
            emit_report(m.report(), common);
        } else if (app.got_subcommand(cmd_db)) {
            std::string text;
            if (db_count) {
                text = rws::count_cycles(db_sigma, db_k) + "\n";
            } else {
                rws::SymString s;
                if (repeat_to) {
                    s = rws::adversarial_string(db_sigma, db_k, repeat_to);
                } else {
                    s = rws::generate_cycle(db_sigma, db_k).cycle;
                }
                const auto raw = syms_to_bytes(s);
                text.assign(raw.begin(), raw.end());
            }
            if (out_path.empty()) std::cout << text;
            else write_text(out_path, text);
            emit_report(rws::UsageReport{}, common);
        } else if (app.got_subcommand(cmd_sort)) {
            std::ifstream in(in_path, std::ios::binary);
            if (!in) throw rws::FormatError("cannot open input path " + in_path);
            std::vector<uint64_t> values;
            uint64_t v = 0;
            while (in >> v) values.push_back(v);
            if (!in.eof()) throw rws::FormatError("input is not whitespace-separated integers");
            std::string text;
            rws::UsageReport rep{};
            if (!values.empty()) {
                const auto inst = rws::make_instance(values);
                const auto shape = rws::phrase_shape(inst.n);
                auto m = make_machine(common, shape.total_len);
                auto sorted = rws::sort_via_bwt(m, inst);
                sorted.resize(values.size());
                for (size_t i = 0; i < sorted.size(); ++i) {
                    text += std::to_string(sorted[i]);
                    text += (i + 1 == sorted.size()) ? "\n" : " ";
                }
                rep = m.report();
            }
            if (out_path.empty()) std::cout << text;
            else write_text(out_path, text);
            emit_report(rep, common);
        }
    } catch (const rws::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const rws::PassLimitError& e) {
        std::cerr << "pass-limit error: " << e.what() << "\n";
        return 4;
    } catch (const rws::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 5;
    } catch (const rws::DecodeError& e) {
        std::cerr << "decode error: " << e.what() << "\n";
        return 6;
    } catch (const rws::InvalidInputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
