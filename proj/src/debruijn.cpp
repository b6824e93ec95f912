#include "rws/debruijn.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace rws {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void check_params(uint32_t sigma, uint32_t k) {
    if (sigma < 2) throw InvalidInputError("alphabet size must be at least 2");
    if (k < 1) throw InvalidInputError("order must be at least 1");
}

uint64_t checked_pow(uint32_t base, uint32_t exp, uint64_t cap) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        if (v > cap / base) throw BudgetError("sequence length exceeds the configured cap");
        v *= base;
    }
    return v;
}

}  // namespace

DeBruijnCycle generate_cycle(uint32_t sigma, uint32_t k, uint64_t max_len) {
    check_params(sigma, k);
    const uint64_t len = checked_pow(sigma, k, max_len);
    const uint64_t nodes = len / sigma;  // sigma^(k-1)

    // Iterative Eulerian circuit, smallest unused edge first, so the output
    // is deterministic.  stack entries carry the symbol that led to a node;
    // symbols are emitted in reverse completion order.
    std::vector<uint32_t> next_sym(nodes, 0);
    std::vector<std::pair<uint64_t, uint32_t>> stack;
    std::vector<Symbol> circuit;
    circuit.reserve(len + 1);
    stack.push_back({0, 0});
    while (!stack.empty()) {
        const auto [u, sym_in] = stack.back();
        if (next_sym[u] < sigma) {
            const uint32_t c = next_sym[u]++;
            stack.push_back({(u * sigma + c) % nodes, c});
        } else {
            circuit.push_back(static_cast<Symbol>(sym_in));
            stack.pop_back();
        }
    }
    circuit.pop_back();  // root marker
    std::reverse(circuit.begin(), circuit.end());

    // Rotate so the cycle begins with the all-zero k-tuple (it occurs exactly
    // once cyclically).
    DeBruijnCycle out{sigma, k, SymString(len, 0)};
    uint64_t anchor = 0;
    for (uint64_t i = 0; i < len; ++i) {
        bool zeros = true;
        for (uint32_t j = 0; j < k && zeros; ++j) zeros = circuit[(i + j) % len] == 0;
        if (zeros) {
            anchor = i;
            break;
        }
    }
    for (uint64_t i = 0; i < len; ++i) out.cycle[i] = circuit[(anchor + i) % len];
    return out;
}

bool is_debruijn_cycle(const DeBruijnCycle& c) {
    if (c.sigma < 2 || c.k < 1) return false;
    uint64_t len = 1;
    for (uint32_t i = 0; i < c.k; ++i) {
        if (len > (1ull << 40) / c.sigma) return false;
        len *= c.sigma;
    }
    if (c.cycle.size() != len) return false;
    for (Symbol s : c.cycle)
        if (s >= c.sigma) return false;
    std::vector<uint8_t> seen(len, 0);
    for (uint64_t i = 0; i < len; ++i) {
        uint64_t tuple = 0;
        for (uint32_t j = 0; j < c.k; ++j)
            tuple = tuple * c.sigma + c.cycle[(i + j) % len];
        if (seen[tuple]++) return false;
    }
    return true;
}

std::string count_cycles(uint32_t sigma, uint32_t k) {
    check_params(sigma, k);
    const uint64_t exp = checked_pow(sigma, k - 1, 1ull << 40);

    // Size precheck: sigma^(k-1) * log2(sigma!) result bits, capped ~10^6.
    const double bits = static_cast<double>(exp) * (std::lgamma(sigma + 1.0) / std::log(2.0));
    if (bits > 1.0e6) throw BudgetError("cycle count exceeds the big-integer cap");

    BigInt fact = 1;
    for (uint32_t i = 2; i <= sigma; ++i) fact *= i;
    BigInt total = boost::multiprecision::pow(fact, static_cast<unsigned>(exp));
    const BigInt divisor = BigInt(sigma) * BigInt(exp);  // sigma^k
    if (total % divisor != 0) throw Error("internal: cycle count formula gave a remainder");
    const BigInt result = total / divisor;
    return result.str();
}

namespace {

struct Search {
    uint32_t sigma = 0;
    uint32_t k = 0;
    uint64_t nodes = 0;
    uint64_t edges = 0;
    std::vector<uint16_t> used;     // per-node bitmask of taken symbols
    std::vector<Symbol> path;       // edge symbols in walk order
    uint64_t count = 0;
    std::vector<DeBruijnCycle>* out = nullptr;

    void record() {
        ++count;
        if (!out) return;
        // Walk ends at the all-zeros node, so the final k-1 symbols of the
        // cyclic string are zeros; rotating them to the front anchors it.
        DeBruijnCycle c{sigma, k, SymString()};
        c.cycle.reserve(edges);
        for (uint32_t i = 0; i + 1 < k; ++i) c.cycle.push_back(0);
        for (uint64_t i = 0; i + k - 1 < edges; ++i) c.cycle.push_back(path[i]);
        out->push_back(std::move(c));
    }

    void dfs(uint64_t u) {
        if (path.size() == edges) {
            record();
            return;
        }
        for (uint32_t c = 0; c < sigma; ++c) {
            const uint16_t bit = static_cast<uint16_t>(1u << c);
            if (used[u] & bit) continue;
            used[u] |= bit;
            path.push_back(static_cast<Symbol>(c));
            dfs((u * sigma + c) % nodes);
            path.pop_back();
            used[u] &= static_cast<uint16_t>(~bit);
        }
    }
};

Search run_search(uint32_t sigma, uint32_t k, std::vector<DeBruijnCycle>* out) {
    check_params(sigma, k);
    const uint64_t len = checked_pow(sigma, k, 12);
    Search s;
    s.sigma = sigma;
    s.k = k;
    s.nodes = len / sigma;
    s.edges = len;
    s.used.assign(s.nodes, 0);
    s.out = out;
    // Anchoring: force the first edge (all-zeros tuple) so each cyclic
    // sequence is visited exactly once.
    s.used[0] = 1;
    s.path.push_back(0);
    s.dfs(0 % s.nodes);
    return s;
}

}  // namespace

std::vector<DeBruijnCycle> enumerate_cycles_small(uint32_t sigma, uint32_t k) {
    std::vector<DeBruijnCycle> out;
    run_search(sigma, k, &out);
    return out;
}

uint64_t count_cycles_exhaustive(uint32_t sigma, uint32_t k) {
    return run_search(sigma, k, nullptr).count;
}

SymString adversarial_string(uint32_t sigma, uint32_t k, uint64_t n) {
    const DeBruijnCycle d = generate_cycle(sigma, k);
    SymString out(n, 0);
    for (uint64_t i = 0; i < n; ++i) out[i] = d.cycle[i % d.cycle.size()];
    return out;
}

}  // namespace rws
