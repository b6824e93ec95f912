#include "rws/oracles.hpp"

#include <algorithm>
#include <numeric>

namespace rws {

namespace {

// Order values with the sentinel mapped below every alphabet symbol.
std::vector<uint32_t> with_sentinel(const SymString& s, uint32_t sigma) {
    occ(s, sigma);
    std::vector<uint32_t> a(s.size() + 1);
    for (size_t i = 0; i < s.size(); ++i) a[i] = static_cast<uint32_t>(s[i]) + 1;
    a[s.size()] = 0;
    return a;
}

}  // namespace

SymString bwt_rotation_oracle(const SymString& s, uint32_t sigma) {
    const std::vector<uint32_t> a = with_sentinel(s, sigma);
    const size_t len = a.size();
    std::vector<uint32_t> rot(len);
    std::iota(rot.begin(), rot.end(), 0u);
    std::sort(rot.begin(), rot.end(), [&](uint32_t x, uint32_t y) {
        for (size_t t = 0; t < len; ++t) {
            const uint32_t cx = a[(x + t) % len];
            const uint32_t cy = a[(y + t) % len];
            if (cx != cy) return cx < cy;
        }
        return false;
    });
    SymString out(len, 0);
    for (size_t r = 0; r < len; ++r) {
        const uint32_t ov = a[(rot[r] + len - 1) % len];
        out[r] = (ov == 0) ? static_cast<Symbol>(sigma) : static_cast<Symbol>(ov - 1);
    }
    return out;
}

std::vector<uint32_t> suffix_array_oracle(const SymString& s, uint32_t sigma) {
    const std::vector<uint32_t> a = with_sentinel(s, sigma);
    const size_t len = a.size();
    std::vector<uint32_t> sa(len);
    std::iota(sa.begin(), sa.end(), 1u);
    std::sort(sa.begin(), sa.end(), [&](uint32_t x, uint32_t y) {
        size_t i = x - 1, j = y - 1;
        while (i < len && j < len) {
            if (a[i] != a[j]) return a[i] < a[j];
            ++i;
            ++j;
        }
        return i > j;  // the shorter suffix ran out first, ranking it earlier
    });
    return sa;
}

uint64_t period_naive(const SymString& s) {
    const uint64_t n = s.size();
    if (n == 0) return 0;
    for (uint64_t ell = 1; ell < n; ++ell) {
        bool ok = true;
        for (uint64_t i = 0; i + ell < n && ok; ++i) ok = s[i] == s[i + ell];
        if (ok) return ell;
    }
    return n;
}

std::vector<uint32_t> orbit_oracle(const std::vector<uint32_t>& pi) {
    std::vector<uint32_t> out;
    out.reserve(pi.size());
    uint32_t x = 1;
    for (size_t j = 0; j < pi.size(); ++j) {
        out.push_back(x);
        x = pi[x - 1];
    }
    return out;
}

}  // namespace rws
