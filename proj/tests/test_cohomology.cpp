#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "twistbench/cohomology.hpp"
#include "twistbench/corpus.hpp"

using namespace twistbench;
using namespace twistbench::corpus;

namespace {

oracle::Cochain to_map(const Cochain& c)
{
    NerveLevel lvl(*c.groupoid(), c.level(), 1 << 20);
    oracle::Cochain out;
    for (std::size_t i = 0; i < lvl.size(); ++i) out[lvl.tuple_vector(i)] = c.value(i);
    return out;
}

Cochain random_cochain(std::mt19937& rng, const GroupoidPtr& g, int level, CoefficientModule coeff)
{
    NerveLevel lvl(*g, level, 1 << 20);
    std::vector<std::int64_t> v(lvl.size());
    const std::int64_t m = coeff.modulus ? coeff.modulus : 7;
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % m) - (coeff.modulus ? 0 : 3);
    return Cochain(g, level, coeff, v);
}

Cochain coboundary_of_random(std::mt19937& rng, const GroupoidPtr& g, int level, CoefficientModule coeff)
{
    return graded_differential(random_cochain(rng, g, level - 1, coeff));
}

CoefficientModule zm(std::int64_t m, Involution inv = Involution::trivial) { return {m, inv}; }

}  // namespace

TEST_CASE("Smith normal form")
{
    BigMatrix a(2, 2);
    a(0, 0) = 2;
    a(1, 1) = 3;
    auto s = smith_normal_form(a);
    CHECK(s.diagonal() == std::vector<BigInt>{1, 6});
    CHECK(multiply(multiply(s.U, a), s.V) == s.D);
    CHECK(multiply(s.U, s.U_inv) == BigMatrix::identity(2));
    std::mt19937 rng(1);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        BigMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<int>(rng() % 13) - 6;
        auto sm = smith_normal_form(m);
        CHECK(multiply(multiply(sm.U, m), sm.V) == sm.D);
        CHECK(multiply(sm.V, sm.V_inv) == BigMatrix::identity(c));
        auto d = sm.diagonal();
        for (std::size_t i = 0; i + 1 < d.size(); ++i)
            if (d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) CHECK(sm.D(i, j) == 0);
    }
    // entries past the int64 fast path are redone exactly
    for (BigInt big : {BigInt(1) << 61, BigInt(1) << 70}) {
        BigMatrix m(2, 2);
        m(0, 0) = big + 1;
        m(0, 1) = big;
        m(1, 0) = big - 1;
        m(1, 1) = big + 3;
        auto sm = smith_normal_form(m);
        CHECK(multiply(multiply(sm.U, m), sm.V) == sm.D);
        CHECK(multiply(sm.U, sm.U_inv) == BigMatrix::identity(2));
        CHECK(sm.D(0, 0) * sm.D(1, 1) == abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)));
    }
}

TEST_CASE("modular diagonalization")
{
    std::mt19937 rng(2);
    for (std::int64_t m : {2, 4, 6, 12}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
            Matrix<std::int64_t> a(r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) a(i, j) = rng() % m;
            auto ms = modular_smith(a, m, true);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) {
                    std::int64_t acc = 0;
                    for (std::size_t k = 0; k < r; ++k)
                        for (std::size_t l = 0; l < c; ++l)
                            acc = mod_reduce(acc + ms.U(i, k) * a(k, l) % m * ms.V(l, j), m);
                    std::int64_t want = i == j ? mod_reduce(ms.d[j], m) : 0;
                    CHECK(acc == want);
                }
        }
    }
}

TEST_CASE("differential against the face formula")
{
    std::mt19937 rng(5);
    for (const auto& ng : standard_corpus()) {
        for (auto inv : {Involution::trivial, Involution::negation}) {
            for (int l = 0; l <= 2; ++l) {
                auto c = random_cochain(rng, ng.groupoid, l, zm(12, inv));
                auto d = graded_differential(c);
                CHECK(to_map(d) == oracle::delta(*ng.groupoid, l, to_map(c), 12, inv == Involution::negation));
                CHECK(graded_differential(d).is_zero());
            }
        }
        auto cz = random_cochain(rng, ng.groupoid, 1, zm(0, Involution::negation));
        CHECK(graded_differential(graded_differential(cz)).is_zero());
    }
}

TEST_CASE("known groups")
{
    auto bz2 = share(delooping(cyclic_group(2)));
    for (int n = 0; n <= 3; ++n) CHECK(cohomology_group(bz2, n, zm(2)).group().to_string() == "Z/2");
    auto bz2g = share(delooping(cyclic_group(2), {1, -1}));
    CHECK(cohomology_group(bz2g, 2, zm(4, Involution::negation)).group().to_string() == "Z/2");
    CHECK(cohomology_group(bz2, 1, zm(0)).group().trivial());
    CHECK(cohomology_group(bz2, 2, zm(0)).group().to_string() == "Z/2");
    CHECK(cohomology_group(bz2, 0, zm(0)).group().to_string() == "Z");
    auto v4 = share(delooping(klein_group()));
    CHECK(cohomology_group(v4, 2, zm(2)).group().order() == 8);
    CHECK(cohomology_group(v4, 1, zm(2)).group().order() == 4);
    auto bz3 = share(delooping(cyclic_group(3)));
    CHECK(cohomology_group(bz3, 3, zm(3)).group().to_string() == "Z/3");
    auto bs3 = share(delooping(symmetric_group3()));
    CHECK(cohomology_group(bs3, 3, zm(6)).group().to_string() == "Z/6");
    CHECK(cohomology_group(bs3, 3, zm(0)).group().trivial());
    CHECK(cohomology_group(share(pair_groupoid({"a", "b"})), 2, zm(5)).group().trivial());
    CHECK(cohomology_group(share(discrete_groupoid({"a", "b"})), 0, zm(5)).group().to_string() == "Z/5 ⊕ Z/5");
}

TEST_CASE("group orders match brute-force counting")
{
    struct Case {
        GroupoidPtr g;
        int n;
        std::int64_t m;
        Involution inv;
        bool normalized;
    };
    auto bz2 = share(delooping(cyclic_group(2)));
    auto bz2g = share(delooping(cyclic_group(2), {1, -1}));
    auto v4 = share(delooping(klein_group()));
    auto bz3 = share(delooping(cyclic_group(3)));
    auto swap = share(graded_semidirect(two_point_swap()));
    auto pair = share(pair_groupoid({"a", "b", "c"}));
    auto z2z2 = share(action_groupoid({"u", "v"}, cyclic_group(2), {{0, 1}, {1, 0}}, {1, -1}));
    std::vector<Case> cases = {
        {bz2, 1, 2, Involution::trivial, false},   {bz2, 2, 2, Involution::trivial, false},
        {bz2g, 1, 4, Involution::negation, false}, {bz2g, 2, 4, Involution::negation, false},
        {bz2g, 2, 3, Involution::negation, false}, {bz2g, 0, 4, Involution::negation, false},
        {bz2, 2, 4, Involution::trivial, false},   {bz3, 2, 3, Involution::trivial, false},
        {swap, 1, 4, Involution::negation, false}, {swap, 2, 4, Involution::negation, true},
        {pair, 1, 3, Involution::trivial, false},  {pair, 2, 2, Involution::trivial, true},
        {v4, 2, 2, Involution::trivial, true},     {bz2g, 3, 2, Involution::negation, true},
        {z2z2, 1, 4, Involution::negation, false}, {z2z2, 2, 4, Involution::negation, true},
        {bz3, 3, 3, Involution::trivial, true},
    };
    for (const auto& c : cases) {
        auto want = oracle::cohomology_counts(*c.g, c.n, c.m, c.inv == Involution::negation, c.normalized);
        auto got = cohomology_group(c.g, c.n, zm(c.m, c.inv)).group().order();
        CHECK(got == BigInt(want.order()));
    }
}

TEST_CASE("normalized and unnormalized counting agree")
{
    auto bz2g = share(delooping(cyclic_group(2), {1, -1}));
    auto swap = share(graded_semidirect(two_point_swap()));
    for (const auto& g : {bz2g, swap})
        for (int n = 1; n <= 2; ++n) {
            auto a = oracle::cohomology_counts(*g, n, 4, true, false);
            auto b = oracle::cohomology_counts(*g, n, 4, true, true);
            CHECK(a.order() == b.order());
        }
}

TEST_CASE("classes are constant on cohomology classes and separate distinct ones")
{
    std::mt19937 rng(9);
    for (const auto& ng : standard_corpus()) {
        for (auto [m, inv] : {std::pair{std::int64_t{2}, Involution::trivial}, std::pair{std::int64_t{4}, Involution::negation},
                              std::pair{std::int64_t{0}, Involution::trivial}}) {
            for (int n = 1; n <= 2; ++n) {
                CohomologyGroup H(ng.groupoid, n, zm(m, inv));
                auto all = H.group().order() == 0 ? std::vector<std::vector<std::int64_t>>{} : H.enumerate(64);
                std::set<std::vector<std::int64_t>> seen;
                for (const auto& coords : all) {
                    auto rep = H.representative(coords);
                    REQUIRE(H.is_cocycle(rep));
                    CHECK(H.coordinates(rep) == coords);
                    auto shifted = rep + coboundary_of_random(rng, ng.groupoid, n, zm(m, inv));
                    CHECK(H.coordinates(shifted) == coords);
                    auto eta = H.cohomologous(rep, shifted);
                    REQUIRE(eta.has_value());
                    CHECK(graded_differential(*eta) == shifted - rep);
                    seen.insert(coords);
                }
                CHECK(seen.size() == all.size());
                for (std::size_t i = 0; i + 1 < all.size(); ++i)
                    CHECK_FALSE(H.cohomologous(H.representative(all[i]), H.representative(all[i + 1])).has_value());
            }
        }
    }
}

TEST_CASE("coboundary solving and non-cocycles")
{
    auto bz2 = share(delooping(cyclic_group(2)));
    CohomologyGroup H(bz2, 2, zm(2));
    // λ(t,t) = 1 is the nontrivial class
    Cochain lam(bz2, 2, zm(2), {0, 0, 0, 1});
    CHECK(H.is_cocycle(lam));
    CHECK_FALSE(H.reduce(lam).is_zero());
    CHECK_FALSE(H.solve_coboundary(lam).has_value());
    Cochain bad(bz2, 2, zm(2), {0, 1, 0, 0});
    CHECK_FALSE(H.is_cocycle(bad));
    CHECK_THROWS_AS(H.coordinates(bad), InvalidError);
    try {
        H.coordinates(bad);
    } catch (const InvalidError& e) {
        CHECK(std::string(e.what()).find("not a cocycle") != std::string::npos);
    }
    CohomologyGroup H0(bz2, 0, zm(2));
    Cochain c0(bz2, 0, zm(2), {1});
    CHECK_THROWS_AS(H0.solve_coboundary(c0), UnsupportedError);
    CHECK_THROWS_AS(check_modulus(1), InvalidError);
    CHECK_THROWS_AS(Cochain(bz2, 2, zm(2), {0, 1}), InvalidError);
}

TEST_CASE("pullback is compatible with the differential")
{
    std::mt19937 rng(4);
    auto s3 = symmetric_group3();
    auto bs3 = share(delooping(s3, sign_character(s3)));
    auto cov = covering_groupoid(bs3, {"u", "v"}, {0, 0});
    for (int l = 0; l <= 2; ++l) {
        auto c = random_cochain(rng, bs3, l, zm(6, Involution::negation));
        CHECK(graded_differential(pullback(c, cov.projection)) == pullback(graded_differential(c), cov.projection));
    }
    // pulling back along a weak equivalence is an isomorphism on classes
    CohomologyGroup Hb(bs3, 2, zm(6, Involution::negation));
    CohomologyGroup Hc(cov.groupoid, 2, zm(6, Involution::negation));
    CHECK(Hb.group() == Hc.group());
    for (const auto& coords : Hb.enumerate(64)) {
        auto pb = pullback(Hb.representative(coords), cov.projection);
        CHECK(Hc.reduce(pb).is_zero() == (std::all_of(coords.begin(), coords.end(), [](auto v) { return v == 0; })));
    }
}

TEST_CASE("default modulus")
{
    CHECK(default_modulus(delooping(cyclic_group(2))) == 4);
    CHECK(default_modulus(delooping(symmetric_group3())) == 12);
    CHECK(default_modulus(pair_groupoid({"a", "b"})) == 2);
}
