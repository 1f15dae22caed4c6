#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistbench/groupoid.hpp"
#include "twistbench/nerve.hpp"
#include "twistbench/smith.hpp"

namespace twistbench {

enum class Involution { trivial, negation };

std::string to_string(Involution inv);
Involution parse_involution(const std::string& s);

// Z/m with m >= 2, or the integers when m == 0.
struct CoefficientModule {
    std::int64_t modulus = 2;
    Involution involution = Involution::trivial;

    // ε ⊳ a
    std::int64_t act(int epsilon, std::int64_t a) const;
    std::int64_t reduce(std::int64_t a) const { return mod_reduce(a, modulus); }
    bool operator==(const CoefficientModule& o) const
    {
        return modulus == o.modulus && involution == o.involution;
    }
};

void check_modulus(std::int64_t m);

class Cochain {
public:
    Cochain(GroupoidPtr g, int level, CoefficientModule coeff, std::vector<std::int64_t> values);
    static Cochain zero(GroupoidPtr g, int level, CoefficientModule coeff, const Limits& limits = default_limits());

    const GroupoidPtr& groupoid() const { return g_; }
    int level() const { return level_; }
    const CoefficientModule& coefficients() const { return coeff_; }
    const std::vector<std::int64_t>& values() const { return values_; }
    std::int64_t value(std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    bool is_zero() const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    Cochain scaled(std::int64_t k) const;
    bool operator==(const Cochain& o) const;

private:
    void check_compatible(const Cochain& o) const;

    GroupoidPtr g_;
    int level_;
    CoefficientModule coeff_;
    std::vector<std::int64_t> values_;
};

// "g1|g2|..." for tuples, the object id at level 0
std::string tuple_key(const GradedGroupoid& g, const int* tuple, int level);

// Sparse matrix of Δ^φ from level l to level l+1; row r lists (column, coefficient).
struct DifferentialMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::size_t, int>>> entries;
};

DifferentialMatrix differential_matrix(const GradedGroupoid& g, int level, Involution inv,
                                       const Limits& limits = default_limits());

Cochain graded_differential(const Cochain& c, const Limits& limits = default_limits());

struct AbelianGroupPresentation {
    std::vector<std::int64_t> invariant_factors;  // d1 | d2 | ..., each > 1 or 0

    bool trivial() const { return invariant_factors.empty(); }
    // 0 when infinite
    BigInt order() const;
    std::string to_string() const;
    bool operator==(const AbelianGroupPresentation& o) const { return invariant_factors == o.invariant_factors; }
};

struct CohomologyClass;

// Ȟ^n at one degree together with the data that coordinatizes cocycles and
// solves coboundary equations.
class CohomologyGroup {
public:
    CohomologyGroup(GroupoidPtr g, int degree, CoefficientModule coeff, const Limits& limits = default_limits());

    const GroupoidPtr& groupoid() const { return g_; }
    int degree() const { return n_; }
    const CoefficientModule& coefficients() const { return coeff_; }
    const AbelianGroupPresentation& group() const { return group_; }

    // Δ^φ of a degree-n cochain and of a degree-(n-1) cochain, from the cached matrices
    Cochain differential(const Cochain& c) const;
    Cochain coboundary_of(const Cochain& eta) const;
    // index of the first tuple where Δ^φ c is nonzero
    std::optional<std::size_t> first_violation(const Cochain& c) const;
    bool is_cocycle(const Cochain& c) const { return !first_violation(c).has_value(); }
    std::vector<std::int64_t> coordinates(const Cochain& cocycle) const;
    CohomologyClass reduce(const Cochain& cocycle) const;
    Cochain representative(const std::vector<std::int64_t>& coordinates) const;
    // η with Δ^φ η = b, if any
    std::optional<Cochain> solve_coboundary(const Cochain& b) const;
    std::optional<Cochain> cohomologous(const Cochain& c1, const Cochain& c2) const;
    // every coordinate vector, when the group is finite with at most max_count elements
    std::vector<std::vector<std::int64_t>> enumerate(std::size_t max_count) const;

private:
    void check(const Cochain& c) const;
    std::vector<BigInt> kernel_coordinates(const std::vector<std::int64_t>& x) const;
    std::vector<std::int64_t> apply(const DifferentialMatrix& d, const std::vector<std::int64_t>& x) const;

    GroupoidPtr g_;
    int n_;
    CoefficientModule coeff_;
    Limits limits_;
    DifferentialMatrix up_;    // level n -> n+1
    DifferentialMatrix down_;  // level n-1 -> n
    AbelianGroupPresentation group_;

    // kernel of Δ at level n: generators V[:, gen_cols[i]] scaled by gen_scale[i]
    std::vector<std::size_t> gen_cols_;
    std::vector<std::int64_t> gen_order_;  // g_i (0 for the free case)
    std::vector<std::int64_t> gen_scale_;
    Matrix<std::int64_t> kV_, kV_inv_;
    BigMatrix kVz_, kVz_inv_;

    // relation step: z = map_ k taken mod factors; k = rep_ z
    BigMatrix map_, rep_;
    std::vector<std::size_t> kept_rows_;  // rows of map_ surviving as invariant factors

    // solver for Δ at level n-1
    bool has_down_ = false;
    ModularSmith solve_mod_;
    SmithResult solve_int_;
};

struct CohomologyClass {
    int level = 0;
    Cochain representative;
    AbelianGroupPresentation group;
    std::vector<std::int64_t> coordinates;

    bool is_zero() const;
};

CohomologyGroup cohomology_group(const GroupoidPtr& g, int degree, CoefficientModule coeff,
                                 const Limits& limits = default_limits());
CohomologyClass reduce_to_class(const Cochain& cocycle, const Limits& limits = default_limits());
std::optional<Cochain> is_cohomologous(const Cochain& c1, const Cochain& c2, const Limits& limits = default_limits());

// Pullback of a cochain along a functor; the grading must be preserved when
// the coefficients carry a nontrivial involution.
Cochain pullback(const Cochain& c, const GroupoidFunctor& F, const Limits& limits = default_limits());

// L = lcm of the nonzero integral Smith invariants of Δ^φ from level n-1 to n.
// A Z/m cocycle of degree n is trivial in U(1) iff L times it is a coboundary over Z/(mL).
std::int64_t circle_lift(const GradedGroupoid& g, int degree, Involution inv, const Limits& limits = default_limits());

// 2 · lcm of the orders of isotropy morphisms
std::int64_t default_modulus(const GradedGroupoid& g);

}  // namespace twistbench
