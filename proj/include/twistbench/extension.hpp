#pragma once

#include <optional>

#include "twistbench/cohomology.hpp"

namespace twistbench {

// Trivialized φ-twisted super extension: a Z/2 grading c on morphisms and an
// additive phase 2-cochain λ over Z/m with the negation involution.
class TwistedExtension {
public:
    TwistedExtension(Cochain c, Cochain lambda);
    static TwistedExtension trivial(GroupoidPtr g, std::int64_t modulus, const Limits& limits = default_limits());

    const GroupoidPtr& groupoid() const { return c_.groupoid(); }
    std::int64_t modulus() const { return lambda_.coefficients().modulus; }
    const Cochain& c() const { return c_; }
    const Cochain& lambda() const { return lambda_; }
    int grading(int morphism) const { return static_cast<int>(c_.value(static_cast<std::size_t>(morphism))); }

    bool operator==(const TwistedExtension& o) const { return c_ == o.c_ && lambda_ == o.lambda_; }

private:
    Cochain c_, lambda_;
};

CoefficientModule grading_coefficients();
CoefficientModule phase_coefficients(std::int64_t modulus);

ValidationReport validate_extension(const TwistedExtension& e, const Limits& limits = default_limits());
void require_valid(const TwistedExtension& e, const Limits& limits = default_limits());

// c = c1 + c2, λ = λ1 + λ2 over Z/lcm(m1, m2)
TwistedExtension tensor_extensions(const TwistedExtension& e1, const TwistedExtension& e2,
                                   const Limits& limits = default_limits());
// the same phases read in Z/m' for a multiple m' of the modulus
TwistedExtension lift_modulus(const TwistedExtension& e, std::int64_t modulus);
TwistedExtension pullback_extension(const TwistedExtension& e, const GroupoidFunctor& F,
                                    const Limits& limits = default_limits());

// c ≡ 0 and λ shifted by Δ^φ η
TwistedExtension shifted(const TwistedExtension& e, const Cochain& eta, const Limits& limits = default_limits());

struct ExtensionClass {
    CohomologyClass c;       // in Ȟ¹(Γ, Z/2)
    CohomologyClass lambda;  // in Ȟ²((Γ,φ), Z/m)

    bool operator==(const ExtensionClass& o) const
    {
        return c.coordinates == o.c.coordinates && lambda.coordinates == o.lambda.coordinates;
    }
};

// Data of a rank-1 1-morphism e1 -> e2: a per-object parity a with
// Δa = c2 - c1, a sign cochain b with Δb = κ, and a phase η with
// Δ^φ η = λ1 - λ2. Here κ(γ1,γ2) = (c1 + c2)(γ1)·c2(γ2).
struct LineMorphism {
    Cochain parity;  // level 0, Z/2
    Cochain sign;    // level 1, Z/2
    Cochain eta;     // level 1, Z/m
};

// Cohomology groups for one groupoid and modulus, reused across many
// classification and refinement queries.
class ExtensionClassifier {
public:
    ExtensionClassifier(GroupoidPtr g, std::int64_t modulus, const Limits& limits = default_limits());

    const CohomologyGroup& grading_group() const { return h1_; }
    const CohomologyGroup& phase_group() const { return h2_; }

    ExtensionClass classify(const TwistedExtension& e) const;
    // η with Δ^φ η = λ1 - λ2, provided c1 = c2
    std::optional<Cochain> find_refinement(const TwistedExtension& e1, const TwistedExtension& e2) const;
    std::optional<LineMorphism> find_line_morphism(const TwistedExtension& e1, const TwistedExtension& e2) const;

private:
    void check(const TwistedExtension& e) const;

    GroupoidPtr g_;
    std::int64_t modulus_;
    Limits limits_;
    CohomologyGroup h1_, h2_;
    NerveLevel pairs_;
};

ExtensionClass extension_class(const TwistedExtension& e, const Limits& limits = default_limits());
bool is_refinement(const TwistedExtension& e1, const TwistedExtension& e2, const Cochain& eta,
                   const Limits& limits = default_limits());
std::optional<Cochain> find_refinement(const TwistedExtension& e1, const TwistedExtension& e2,
                                       const Limits& limits = default_limits());
std::optional<LineMorphism> find_line_morphism(const TwistedExtension& e1, const TwistedExtension& e2,
                                               const Limits& limits = default_limits());
// κ(γ1,γ2) = (c1 + c2)(γ1)·c2(γ2) mod 2
Cochain koszul_cochain(const TwistedExtension& e1, const TwistedExtension& e2, const Limits& limits = default_limits());

// Classifying triple of a super 2-line bundle in trivialized form.
struct TwoLineDescriptor {
    TwistedExtension extension;
    Cochain alpha;  // level 0, Z/2, constant along morphisms
};

ValidationReport validate_descriptor(const TwoLineDescriptor& d, const Limits& limits = default_limits());

// restriction of e to the automorphism group of one object
TwistedExtension isotropy_extension(const TwistedExtension& e, int object, const Limits& limits = default_limits());

}  // namespace twistbench
