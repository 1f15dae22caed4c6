// Brute-force references for extensions: exhaustive enumeration of valid
// (c, λ) pairs and coboundary sets, plus the closed twisted-double formula.
#pragma once

#include <set>

#include "oracles.hpp"
#include "twistbench/extension.hpp"
#include "twistbench/transgression.hpp"

namespace oracle {

using Vec = std::vector<std::int64_t>;

inline Vec values(const Cochain& c)
{
    Vec v;
    for (auto& [t, x] : c) v.push_back(x);
    return v;
}

// every level-l cochain over Z/m as a vector in nerve order
inline std::vector<Vec> all_cochains(const twistbench::GradedGroupoid& g, int l, std::int64_t m)
{
    std::vector<Vec> out;
    for_each_cochain(g, l, m, false, [&](const Cochain& c) { out.push_back(values(c)); });
    return out;
}

inline std::vector<Vec> cocycles(const twistbench::GradedGroupoid& g, int l, std::int64_t m, bool negation)
{
    std::vector<Vec> out;
    for_each_cochain(g, l, m, false, [&](const Cochain& c) {
        auto d = delta(g, l, c, m, negation);
        for (auto& [t, v] : d)
            if (v) return;
        out.push_back(values(c));
    });
    return out;
}

inline std::set<Vec> coboundaries(const twistbench::GradedGroupoid& g, int l, std::int64_t m, bool negation)
{
    std::set<Vec> out;
    for_each_cochain(g, l - 1, m, false, [&](const Cochain& c) { out.insert(values(delta(g, l - 1, c, m, negation))); });
    return out;
}

inline Vec diff(const Vec& a, const Vec& b, std::int64_t m)
{
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod(a[i] - b[i], m);
    return out;
}

// λ((a,x),(b,x·a)) = ω(x,a,b) + ω(a,b,(ab)⁻¹x(ab)) - ω(a,a⁻¹xa,b)
inline std::int64_t twisted_double(const twistbench::MultiplicativeTwisting& t, int x, int a, int b)
{
    const auto& G = t.group;
    auto conj = [&](int g, int y) { return G.mul(G.inverse(g), G.mul(y, g)); };
    const int ab = G.mul(a, b);
    return mod(t.at(x, a, b) + t.at(a, b, conj(ab, x)) - t.at(a, conj(a, x), b), t.modulus);
}

}  // namespace oracle
