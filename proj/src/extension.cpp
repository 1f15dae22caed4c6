#include "twistbench/extension.hpp"

#include <numeric>

namespace twistbench {

CoefficientModule grading_coefficients() { return {2, Involution::trivial}; }

CoefficientModule phase_coefficients(std::int64_t modulus) { return {modulus, Involution::negation}; }

TwistedExtension::TwistedExtension(Cochain c, Cochain lambda) : c_(std::move(c)), lambda_(std::move(lambda))
{
    if (c_.groupoid() != lambda_.groupoid()) throw InvalidError("c and λ live on different groupoids");
    if (c_.level() != 1 || lambda_.level() != 2) throw InvalidError("c must be a 1-cochain and λ a 2-cochain");
    if (!(c_.coefficients() == grading_coefficients())) throw InvalidError("c must take values in Z/2");
    if (lambda_.coefficients().involution != Involution::negation || lambda_.coefficients().modulus < 2)
        throw InvalidError("λ must take values in Z/m, m >= 2, with the negation involution");
}

TwistedExtension TwistedExtension::trivial(GroupoidPtr g, std::int64_t modulus, const Limits& limits)
{
    check_modulus(modulus);
    if (modulus == 0) throw InvalidError("extensions need a finite modulus");
    auto c = Cochain::zero(g, 1, grading_coefficients(), limits);
    return TwistedExtension(std::move(c), Cochain::zero(g, 2, phase_coefficients(modulus), limits));
}

ValidationReport validate_extension(const TwistedExtension& e, const Limits& limits)
{
    ValidationReport r;
    const auto& g = *e.groupoid();
    const auto& coeff = e.lambda().coefficients();
    NerveLevel pairs(g, 2, limits.nerve_cap);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const int* t = pairs.tuple(i);
        int lhs = e.grading(g.compose(t[0], t[1]));
        if (lhs != (e.grading(t[0]) + e.grading(t[1])) % 2) {
            r.add("c cocycle", "c(γ1∘γ2) != c(γ1) + c(γ2) at (" + tuple_key(g, t, 2) + ")");
            break;
        }
    }
    NerveLevel triples(g, 3, limits.nerve_cap);
    int face[2];
    auto lam = [&](int a, int b) {
        face[0] = a;
        face[1] = b;
        return e.lambda().value(pairs.index_of(face));
    };
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const int* t = triples.tuple(i);
        std::int64_t d = lam(t[1], t[2]) - lam(g.compose(t[0], t[1]), t[2]) + lam(t[0], g.compose(t[1], t[2])) -
                         coeff.act(g.phi(t[2]), lam(t[0], t[1]));
        d = coeff.reduce(d);
        if (d != 0) {
            r.add("λ cocycle", "Δ^φ λ = " + std::to_string(d) + " at (" + tuple_key(g, t, 3) + ")");
            break;
        }
    }
    return r;
}

void require_valid(const TwistedExtension& e, const Limits& limits)
{
    auto r = validate_extension(e, limits);
    if (!r.ok()) throw InvalidError("invalid twisted extension", r);
}

TwistedExtension lift_modulus(const TwistedExtension& e, std::int64_t modulus)
{
    if (modulus % e.modulus() != 0) throw InvalidError("target modulus must be a multiple of the current one");
    auto lam = e.lambda().values();
    for (auto& v : lam) v *= modulus / e.modulus();
    return TwistedExtension(e.c(), Cochain(e.groupoid(), 2, phase_coefficients(modulus), lam));
}

TwistedExtension tensor_extensions(const TwistedExtension& e1, const TwistedExtension& e2, const Limits&)
{
    if (e1.groupoid() != e2.groupoid()) throw InvalidError("tensor product of extensions on different groupoids");
    std::int64_t m = std::lcm(e1.modulus(), e2.modulus());
    auto a = lift_modulus(e1, m), b = lift_modulus(e2, m);
    return TwistedExtension(a.c() + b.c(), a.lambda() + b.lambda());
}

TwistedExtension pullback_extension(const TwistedExtension& e, const GroupoidFunctor& F, const Limits& limits)
{
    if (!F.even()) throw InvalidError("pullback of an extension needs an even functor");
    return TwistedExtension(pullback(e.c(), F, limits), pullback(e.lambda(), F, limits));
}

TwistedExtension shifted(const TwistedExtension& e, const Cochain& eta, const Limits& limits)
{
    return TwistedExtension(e.c(), e.lambda() + graded_differential(eta, limits));
}

ExtensionClassifier::ExtensionClassifier(GroupoidPtr g, std::int64_t modulus, const Limits& limits)
    : g_(g), modulus_(modulus), limits_(limits), h1_(g, 1, grading_coefficients(), limits),
      h2_(g, 2, phase_coefficients(modulus), limits), pairs_(*g, 2, limits.nerve_cap)
{
}

void ExtensionClassifier::check(const TwistedExtension& e) const
{
    if (e.groupoid() != g_ || e.modulus() != modulus_)
        throw InvalidError("extension does not match the classifier's groupoid or modulus");
    if (!h1_.is_cocycle(e.c()) || !h2_.is_cocycle(e.lambda())) require_valid(e, limits_);
}

ExtensionClass ExtensionClassifier::classify(const TwistedExtension& e) const
{
    check(e);
    return {h1_.reduce(e.c()), h2_.reduce(e.lambda())};
}

std::optional<Cochain> ExtensionClassifier::find_refinement(const TwistedExtension& e1, const TwistedExtension& e2) const
{
    check(e1);
    check(e2);
    if (!(e1.c() == e2.c())) return std::nullopt;
    return h2_.solve_coboundary(e1.lambda() - e2.lambda());
}

Cochain koszul_cochain(const TwistedExtension& e1, const TwistedExtension& e2, const Limits& limits)
{
    const auto& g = *e1.groupoid();
    NerveLevel pairs(g, 2, limits.nerve_cap);
    std::vector<std::int64_t> k(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const int* t = pairs.tuple(i);
        k[i] = (e1.grading(t[0]) + e2.grading(t[0])) * e2.grading(t[1]);
    }
    return Cochain(e1.groupoid(), 2, grading_coefficients(), std::move(k));
}

std::optional<LineMorphism> ExtensionClassifier::find_line_morphism(const TwistedExtension& e1,
                                                                    const TwistedExtension& e2) const
{
    check(e1);
    check(e2);
    auto a = h1_.solve_coboundary(e2.c() - e1.c());
    if (!a) return std::nullopt;
    auto eta = h2_.solve_coboundary(e1.lambda() - e2.lambda());
    if (!eta) return std::nullopt;
    const auto& g = *g_;
    std::vector<std::int64_t> b(g.num_morphisms());
    for (int h = 0; h < g.num_morphisms(); ++h) b[h] = a->value(g.tgt(h)) * e2.grading(h);
    Cochain sign(g_, 1, grading_coefficients(), b);
    std::vector<std::int64_t> k(pairs_.size());
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const int* t = pairs_.tuple(i);
        k[i] = (e1.grading(t[0]) + e2.grading(t[0])) * e2.grading(t[1]);
    }
    if (!(h1_.differential(sign) == Cochain(g_, 2, grading_coefficients(), std::move(k))))
        throw std::logic_error("sign cochain does not bound the Koszul cochain");
    return LineMorphism{*a, sign, *eta};
}

ExtensionClass extension_class(const TwistedExtension& e, const Limits& limits)
{
    return ExtensionClassifier(e.groupoid(), e.modulus(), limits).classify(e);
}

bool is_refinement(const TwistedExtension& e1, const TwistedExtension& e2, const Cochain& eta, const Limits& limits)
{
    if (e1.groupoid() != e2.groupoid() || e1.modulus() != e2.modulus())
        throw InvalidError("refinement between extensions on different groupoids or moduli");
    if (eta.groupoid() != e1.groupoid() || eta.level() != 1 || !(eta.coefficients() == e1.lambda().coefficients()))
        throw InvalidError("η must be a 1-cochain with the extensions' phase coefficients");
    return e1.c() == e2.c() && graded_differential(eta, limits) == e1.lambda() - e2.lambda();
}

std::optional<Cochain> find_refinement(const TwistedExtension& e1, const TwistedExtension& e2, const Limits& limits)
{
    if (e1.groupoid() != e2.groupoid() || e1.modulus() != e2.modulus())
        throw InvalidError("refinement between extensions on different groupoids or moduli");
    return ExtensionClassifier(e1.groupoid(), e1.modulus(), limits).find_refinement(e1, e2);
}

std::optional<LineMorphism> find_line_morphism(const TwistedExtension& e1, const TwistedExtension& e2,
                                               const Limits& limits)
{
    if (e1.groupoid() != e2.groupoid() || e1.modulus() != e2.modulus())
        throw InvalidError("1-morphism between extensions on different groupoids or moduli");
    return ExtensionClassifier(e1.groupoid(), e1.modulus(), limits).find_line_morphism(e1, e2);
}

ValidationReport validate_descriptor(const TwoLineDescriptor& d, const Limits& limits)
{
    ValidationReport r;
    if (d.alpha.groupoid() != d.extension.groupoid() || d.alpha.level() != 0 ||
        !(d.alpha.coefficients() == grading_coefficients())) {
        r.add("alpha shape", "alpha must be a Z/2 function on the objects of the extension's groupoid");
        return r;
    }
    const auto& g = *d.extension.groupoid();
    for (int h = 0; h < g.num_morphisms(); ++h)
        if (d.alpha.value(g.src(h)) != d.alpha.value(g.tgt(h))) {
            r.add("alpha locally constant", "alpha differs along " + g.morphism_id(h));
            break;
        }
    r.merge(validate_extension(d.extension, limits));
    return r;
}

TwistedExtension isotropy_extension(const TwistedExtension& e, int object, const Limits& limits)
{
    auto sub = full_subgroupoid(e.groupoid(), {object});
    return pullback_extension(e, sub.inclusion, limits);
}

}  // namespace twistbench
