#include "twistbench/corpus.hpp"

#include <array>
#include <numeric>

namespace twistbench::corpus {

GroupTable cyclic_group(int n)
{
    std::vector<std::string> ids;
    for (int k = 0; k < n; ++k) {
        if (k == 0) ids.push_back("e");
        else if (n == 2) ids.push_back("t");
        else if (k == 1) ids.push_back("a");
        else ids.push_back("a" + std::to_string(k));
    }
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return GroupTable(ids, table);
}

GroupTable klein_group()
{
    std::vector<std::vector<int>> table(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) table[a][b] = a ^ b;
    return GroupTable({"e", "a", "b", "ab"}, table);
}

GroupTable symmetric_group3()
{
    using Perm = std::array<int, 3>;
    const std::vector<Perm> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
    const std::vector<std::string> ids = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    // (p*q)(i) = p(q(i))
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            Perm r;
            for (int i = 0; i < 3; ++i) r[i] = perms[a][perms[b][i]];
            for (int c = 0; c < 6; ++c)
                if (perms[c] == r) table[a][b] = c;
        }
    return GroupTable(ids, table);
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b)
{
    const int na = a.order(), nb = b.order();
    std::vector<std::string> ids;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) ids.push_back("(" + a.element_id(i) + "," + b.element_id(j) + ")");
    std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
    for (int x = 0; x < na * nb; ++x)
        for (int y = 0; y < na * nb; ++y)
            table[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    return GroupTable(ids, table);
}

GradedGroupoid conjugation_groupoid(const GroupTable& g)
{
    const int n = g.order();
    std::vector<std::vector<int>> act(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int h = 0; h < n; ++h) act[x][h] = g.mul(g.inverse(h), g.mul(x, h));
    return action_groupoid(g.element_ids(), g, act, std::vector<int>(n, 1));
}

std::vector<int> sign_character(const GroupTable& s3)
{
    std::vector<int> eps(s3.order(), 1);
    for (int a = 0; a < s3.order(); ++a)
        if (s3.element_order(a) == 2) eps[a] = -1;
    return eps;
}

RealStructure two_point_swap()
{
    auto g = share(discrete_groupoid({"a", "b"}));
    return RealStructure(GroupoidFunctor(g, g, {1, 0}, {1, 0}));
}

RealStructure trivial_real_structure(const GroupoidPtr& g)
{
    std::vector<int> obj(g->num_objects()), mor(g->num_morphisms());
    std::iota(obj.begin(), obj.end(), 0);
    std::iota(mor.begin(), mor.end(), 0);
    return RealStructure(GroupoidFunctor(g, g, obj, mor));
}

std::vector<NamedGroupoid> standard_corpus()
{
    auto z2 = cyclic_group(2);
    auto s3 = symmetric_group3();
    return {
        {"pt", share(point_groupoid())},
        {"pair", share(pair_groupoid({"a", "b"}))},
        {"BZ2", share(delooping(z2))},
        {"BZ2_graded", share(delooping(z2, {1, -1}))},
        {"B(Z2xZ2)", share(delooping(klein_group()))},
        {"BS3", share(delooping(s3))},
        {"Gr(swap)", share(graded_semidirect(two_point_swap()))},
        {"Z2//Z2", share(conjugation_groupoid(z2))},
        {"S3//S3", share(conjugation_groupoid(s3))},
    };
}

}  // namespace twistbench::corpus
