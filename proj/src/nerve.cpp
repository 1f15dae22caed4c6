#include "twistbench/nerve.hpp"

#include <cstdlib>
#include <string>

namespace twistbench {

Limits default_limits()
{
    Limits l;
    if (const char* env = std::getenv("TWISTBENCH_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) l.nerve_cap = static_cast<std::size_t>(v);
    }
    return l;
}

namespace {

// chains[r][x] = number of r-tuples whose first morphism has target x
std::vector<std::vector<std::size_t>> chain_counts(const GradedGroupoid& g, int k)
{
    const int no = g.num_objects();
    std::vector<std::vector<std::size_t>> c(k + 1, std::vector<std::size_t>(no, 0));
    for (int x = 0; x < no; ++x) c[0][x] = 1;
    for (int r = 1; r <= k; ++r)
        for (int h = 0; h < g.num_morphisms(); ++h) c[r][g.tgt(h)] += c[r - 1][g.src(h)];
    return c;
}

}  // namespace

std::size_t nerve_size(const GradedGroupoid& g, int k)
{
    if (k == 0) return static_cast<std::size_t>(g.num_objects());
    auto c = chain_counts(g, k);
    std::size_t total = 0;
    for (auto v : c[k]) total += v;
    return total;
}

NerveLevel::NerveLevel(const GradedGroupoid& g, int k, std::size_t cap) : g_(&g), k_(k)
{
    if (k < 0) throw InvalidError("nerve level must be nonnegative");
    count_ = nerve_size(g, k);
    if (count_ > cap)
        throw CapExceededError("nerve level " + std::to_string(k) + " has " + std::to_string(count_) + " elements",
                               cap);
    if (k == 0) {
        for (int x = 0; x < g.num_objects(); ++x) data_.push_back(x);
        return;
    }
    chains_ = chain_counts(g, k);
    const int n = g.num_morphisms();
    offset_same_target_.assign(k, std::vector<std::size_t>(n, 0));
    offset_any_.assign(k, std::vector<std::size_t>(n, 0));
    for (int r = 0; r < k; ++r) {
        std::vector<std::size_t> running(g.num_objects(), 0);
        std::size_t any = 0;
        for (int h = 0; h < n; ++h) {
            std::size_t here = chains_[r][g.src(h)];
            offset_same_target_[r][h] = running[g.tgt(h)];
            offset_any_[r][h] = any;
            running[g.tgt(h)] += here;
            any += here;
        }
    }
    data_.reserve(count_ * k);
    std::vector<int> cur(k);
    // depth-first enumeration in lexicographic order
    std::vector<int> pos(k, -1);
    int d = 0;
    while (d >= 0) {
        int start = pos[d] + 1;
        int found = -1;
        for (int h = start; h < n; ++h)
            if (d == 0 || g.tgt(h) == g.src(cur[d - 1])) {
                found = h;
                break;
            }
        if (found < 0) {
            pos[d] = -1;
            --d;
            continue;
        }
        pos[d] = found;
        cur[d] = found;
        if (d + 1 == k) {
            data_.insert(data_.end(), cur.begin(), cur.end());
        } else {
            ++d;
        }
    }
}

std::size_t NerveLevel::index_of(const int* t) const
{
    if (k_ == 0) return static_cast<std::size_t>(t[0]);
    std::size_t idx = offset_any_[k_ - 1][t[0]];
    for (int i = 1; i < k_; ++i) idx += offset_same_target_[k_ - 1 - i][t[i]];
    return idx;
}

std::vector<int> NerveLevel::tuple_vector(std::size_t i) const
{
    const int* t = tuple(i);
    return std::vector<int>(t, t + width());
}

std::vector<std::vector<int>> nerve(const GradedGroupoid& g, int k, const Limits& limits)
{
    NerveLevel level(g, k, limits.nerve_cap);
    std::vector<std::vector<int>> out;
    out.reserve(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) out.push_back(level.tuple_vector(i));
    return out;
}

}  // namespace twistbench
