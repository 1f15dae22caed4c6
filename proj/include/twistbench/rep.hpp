#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "twistbench/extension.hpp"

namespace twistbench {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

struct SuperDim {
    int even = 0;
    int odd = 0;
    int total() const { return even + odd; }
    bool operator==(const SuperDim& o) const { return even == o.even && odd == o.odd; }
};

// one entry per object; basis vectors are ordered even first
using SuperDims = std::vector<SuperDim>;

struct Operator {
    CMatrix matrix;  // tgt dimension × src dimension
    bool antilinear = false;
};

// A 1-morphism source -> target of twisted extensions on one groupoid: a
// super vector space per object and an (anti)linear operator per morphism
// with T(γ1)T(γ2) = σ_{φ(γ1∘γ2)}(phase(λs - λt)(γ1,γ2))·(-1)^κ·T(γ1∘γ2).
// A twisted vector bundle is the case of a trivial target.
class TwistedMorphismData {
public:
    TwistedMorphismData(TwistedExtension source, TwistedExtension target, SuperDims dims, std::vector<Operator> ops,
                        double tolerance = 1e-9);

    const TwistedExtension& source() const { return source_; }
    const TwistedExtension& target() const { return target_; }
    const GroupoidPtr& groupoid() const { return source_.groupoid(); }
    const SuperDims& dims() const { return dims_; }
    const Operator& op(int morphism) const { return ops_[morphism]; }
    const std::vector<Operator>& ops() const { return ops_; }
    double tolerance() const { return tolerance_; }
    int total_dimension() const;

private:
    TwistedExtension source_, target_;
    SuperDims dims_;
    std::vector<Operator> ops_;
    double tolerance_;
};

// additive phase k/m as a unit complex number
Complex phase(std::int64_t k, std::int64_t m);

ValidationReport validate_rep(const TwistedMorphismData& r, const Limits& limits = default_limits());

// identity 1-morphism of e: rank one, even, ops the identity or conjugation
TwistedMorphismData identity_morphism(const TwistedExtension& e, double tolerance = 1e-9);
TwistedMorphismData zero_morphism(const TwistedExtension& source, const TwistedExtension& target,
                                  double tolerance = 1e-9);
TwistedMorphismData rank_one_morphism(const TwistedExtension& source, const TwistedExtension& target,
                                      const LineMorphism& w, double tolerance = 1e-9);

TwistedMorphismData direct_sum(const TwistedMorphismData& r1, const TwistedMorphismData& r2);
// r2 ∘ r1 on the carriers W2 ⊗ W1, with (f ⊗ g)(v ⊗ w) = (-1)^{|g||v|} f(v) ⊗ g(w)
TwistedMorphismData compose_morphisms(const TwistedMorphismData& r2, const TwistedMorphismData& r1);

// conjugate every operator by the even invertible matrices P_x: T ↦ P_t T P_s⁻¹
TwistedMorphismData change_basis(const TwistedMorphismData& r, const std::vector<CMatrix>& P);

// Solutions X = (X_x) of X_{tγ}∘T1(γ) = T2(γ)∘X_{sγ} as a real vector space.
struct IntertwinerSpace {
    std::vector<std::vector<CMatrix>> basis;
    std::vector<std::vector<CMatrix>> even_basis;
    int real_dimension() const { return static_cast<int>(basis.size()); }
    int even_real_dimension() const { return static_cast<int>(even_basis.size()); }
};

IntertwinerSpace intertwiner_space(const TwistedMorphismData& r1, const TwistedMorphismData& r2);

enum class EndoType { R, C, H };
std::string to_string(EndoType t);

bool is_irreducible(const TwistedMorphismData& r, std::uint64_t seed = 1);
EndoType endo_type(const TwistedMorphismData& r, std::uint64_t seed = 1);

struct SimpleCount {
    int count = 0;
    int rank = 0;                // of the centre equations
    double smallest_kept = 0;    // relative singular value
    double largest_dropped = 0;  // relative singular value
    double tolerance = 0;
};

// dimension of the centre of the twisted groupoid algebra
SimpleCount count_simples(const TwistedExtension& e, double tolerance = 1e-9, const Limits& limits = default_limits());

struct KramersReport {
    ValidationReport report;           // invalid reps and odd-dimensional counterexamples
    std::vector<bool> forced_even;     // per object: its isotropy class is nontrivial in U(1)
    int rank_one_candidates = 0;       // grid points searched in dimension one
    int rank_one_solutions = 0;        // valid rank-one reps found on the grid
    bool rank_one_exists = false;      // from the lifted coboundary equation
    std::int64_t grid_modulus = 0;
};

// Checks the reps against forced even dimensions and searches dimension one
// exhaustively on the phase grid that contains every solution.
KramersReport kramers_check(const TwistedExtension& e, const std::vector<TwistedMorphismData>& reps,
                            const Limits& limits = default_limits());

// modulus m·L at which λ is a coboundary over Z/(mL) iff its U(1) class vanishes
std::int64_t lifted_modulus(const TwistedExtension& e, const Limits& limits = default_limits());
bool trivial_in_circle(const TwistedExtension& e, const Limits& limits = default_limits());

}  // namespace twistbench
