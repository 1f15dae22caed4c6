// Independent brute-force reference implementations used only by tests.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "twistbench/groupoid.hpp"

namespace oracle {

using Tuple = std::vector<int>;
using Cochain = std::map<Tuple, std::int64_t>;

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// all composable k-tuples, generated recursively; level 0 gives {x}
inline std::vector<Tuple> tuples(const twistbench::GradedGroupoid& g, int k)
{
    std::vector<Tuple> out;
    if (k == 0) {
        for (int x = 0; x < g.num_objects(); ++x) out.push_back({x});
        return out;
    }
    std::function<void(Tuple&)> rec = [&](Tuple& t) {
        if (static_cast<int>(t.size()) == k) {
            out.push_back(t);
            return;
        }
        for (int h = 0; h < g.num_morphisms(); ++h)
            if (t.empty() || g.src(t.back()) == g.tgt(h)) {
                t.push_back(h);
                rec(t);
                t.pop_back();
            }
    };
    Tuple t;
    rec(t);
    return out;
}

// (Δ^φ f)(γ1..γ_{l+1}) straight from the face-map formula
inline Cochain delta(const twistbench::GradedGroupoid& g, int l, const Cochain& f, std::int64_t m, bool negation)
{
    Cochain out;
    for (const auto& t : tuples(g, l + 1)) {
        std::int64_t acc = 0;
        int w = (negation && g.phi(t.back()) == -1) ? -1 : 1;
        if (l == 0) {
            acc = f.at({g.src(t[0])}) - w * f.at({g.tgt(t[0])});
        } else {
            for (int p = 0; p <= l + 1; ++p) {
                Tuple face;
                if (p == 0) face.assign(t.begin() + 1, t.end());
                else if (p == l + 1) face.assign(t.begin(), t.end() - 1);
                else {
                    for (int i = 0; i < p - 1; ++i) face.push_back(t[i]);
                    face.push_back(g.compose(t[p - 1], t[p]));
                    for (int i = p + 1; i <= l; ++i) face.push_back(t[i]);
                }
                std::int64_t v = f.at(face);
                if (p == l + 1) v *= w;
                acc += (p % 2 ? -v : v);
            }
        }
        out[t] = m ? mod(acc, m) : acc;
    }
    return out;
}

inline bool has_identity(const twistbench::GradedGroupoid& g, const Tuple& t, int level)
{
    if (level == 0) return false;
    for (int h : t)
        if (g.identity(g.src(h)) == h) return true;
    return false;
}

// calls fn for every Z/m-valued cochain at level l (optionally normalized)
inline void for_each_cochain(const twistbench::GradedGroupoid& g, int l, std::int64_t m, bool normalized,
                             const std::function<void(const Cochain&)>& fn)
{
    auto ts = tuples(g, l);
    std::vector<Tuple> free;
    Cochain c;
    for (const auto& t : ts) {
        c[t] = 0;
        if (!(normalized && has_identity(g, t, l))) free.push_back(t);
    }
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == free.size()) {
            fn(c);
            return;
        }
        for (std::int64_t v = 0; v < m; ++v) {
            c[free[i]] = v;
            rec(i + 1);
        }
        c[free[i]] = 0;
    };
    rec(0);
}

struct Counts {
    std::uint64_t cocycles = 0, coboundaries = 0;
    std::uint64_t order() const { return cocycles / coboundaries; }
};

// Δ^φ from level l to l+1 as columns, one per (optionally non-degenerate)
// level-l tuple, built from the face formula on explicit tuples
inline std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> delta_columns(
    const twistbench::GradedGroupoid& g, int l, bool negation, bool normalized)
{
    auto src = tuples(g, l);
    std::vector<std::map<std::size_t, std::int64_t>> cols(src.size());
    // f ↦ (Δf)(row) is linear in f; read its coefficients off single-entry cochains
    for (std::size_t j = 0; j < src.size(); ++j) {
        if (normalized && has_identity(g, src[j], l)) continue;
        Cochain f;
        for (const auto& t : src) f[t] = 0;
        f[src[j]] = 1;
        auto d = delta(g, l, f, 0, negation);
        std::size_t r = 0;
        for (const auto& [t, v] : d) {
            if (v) cols[j][r] = v;
            ++r;
        }
    }
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> out;
    for (std::size_t j = 0; j < src.size(); ++j)
        if (!(normalized && has_identity(g, src[j], l))) out.emplace_back(cols[j].begin(), cols[j].end());
    return out;
}

// kernel size of Δ on all Z/m cochains (or normalized ones), by enumeration;
// the counter adds one column per digit step, wraps included since m·col ≡ 0
inline std::uint64_t kernel_count(const twistbench::GradedGroupoid& g, int l, std::int64_t m, bool negation,
                                  bool normalized)
{
    auto cols = delta_columns(g, l, negation, normalized);
    std::vector<std::int64_t> d(tuples(g, l + 1).size(), 0);
    std::size_t nonzero = 0;
    std::vector<std::int64_t> digits(cols.size(), 0);
    std::uint64_t kernel = 0;
    auto add = [&](std::size_t j) {
        for (auto [r, v] : cols[j]) {
            const bool was = d[r] != 0;
            d[r] = mod(d[r] + v, m);
            nonzero += (d[r] != 0) - was;
        }
    };
    while (true) {
        kernel += nonzero == 0;
        std::size_t i = 0;
        while (i < cols.size()) {
            add(i);
            if (++digits[i] < m) break;
            digits[i++] = 0;
        }
        if (i == cols.size()) return kernel;
    }
}

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// |Z^n| by enumeration, |B^n| = |C^{n-1}| / |Z^{n-1}|
inline Counts cohomology_counts(const twistbench::GradedGroupoid& g, int n, std::int64_t m, bool negation,
                                bool normalized = false)
{
    Counts k;
    k.cocycles = kernel_count(g, n, m, negation, normalized);
    if (n == 0) {
        k.coboundaries = 1;
        return k;
    }
    std::uint64_t cells = 0;
    for (const auto& t : tuples(g, n - 1)) cells += !(normalized && has_identity(g, t, n - 1));
    k.coboundaries = ipow(m, cells) / kernel_count(g, n - 1, m, negation, normalized);
    return k;
}


}  // namespace oracle
