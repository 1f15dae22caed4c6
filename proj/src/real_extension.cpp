#include "twistbench/real_extension.hpp"

namespace twistbench {

namespace {

void check_shape(const RealCentralExtension& r)
{
    const auto& base = r.real.base();
    if (r.lambda.groupoid() != base || r.beta.groupoid() != base)
        throw InvalidError("λ and β must live on the Real groupoid");
    if (r.lambda.level() != 2 || r.beta.level() != 1) throw InvalidError("λ must be a 2-cochain and β a 1-cochain");
    if (r.lambda.coefficients().modulus != r.modulus || r.beta.coefficients().modulus != r.modulus)
        throw InvalidError("λ and β must use the extension's modulus");
    if (r.modulus < 2) throw InvalidError("Real extensions need a finite modulus >= 2");
}

}  // namespace

ValidationReport validate_real_extension(const RealCentralExtension& r, const Limits& limits)
{
    check_shape(r);
    ValidationReport rep;
    const auto& g = *r.real.base();
    const auto m = r.modulus;
    auto d = graded_differential(r.lambda, limits);
    NerveLevel triples(g, 3, limits.nerve_cap);
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d.value(i) != 0) {
            rep.add("λ cocycle", "δλ = " + std::to_string(d.value(i)) + " at (" + tuple_key(g, triples.tuple(i), 3) + ")");
            break;
        }
    for (int h = 0; h < g.num_morphisms(); ++h)
        if (r.beta.value(r.real.tau_mor(h)) != r.beta.value(h)) {
            rep.add("β involutive", "β(τγ) != β(γ) at " + g.morphism_id(h));
            break;
        }
    NerveLevel pairs(g, 2, limits.nerve_cap);
    int tt[2];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const int* t = pairs.tuple(i);
        tt[0] = r.real.tau_mor(t[0]);
        tt[1] = r.real.tau_mor(t[1]);
        std::int64_t lhs = r.beta.value(g.compose(t[0], t[1])) - r.lambda.value(i);
        std::int64_t rhs = r.beta.value(t[0]) + r.beta.value(t[1]) + r.lambda.value(pairs.index_of(tt));
        if (mod_reduce(lhs - rhs, m) != 0) {
            rep.add("β compatibility", "β(γ1∘γ2) - λ(γ1,γ2) != β(γ1) + β(γ2) + λ(τγ1,τγ2) at (" +
                                           tuple_key(g, t, 2) + ")");
            break;
        }
    }
    return rep;
}

TwistedExtension real_to_graded(const RealCentralExtension& r, const GroupoidPtr& semidirect, const Limits& limits)
{
    auto rep = validate_real_extension(r, limits);
    if (!rep.ok()) throw InvalidError("invalid Real central extension", rep);
    const auto& g = *r.real.base();
    const int n = g.num_morphisms();
    if (semidirect->num_morphisms() != 2 * n || semidirect->num_objects() != g.num_objects())
        throw InvalidError("groupoid is not the semidirect product of this Real structure");
    NerveLevel base_pairs(g, 2, limits.nerve_cap);
    NerveLevel pairs(*semidirect, 2, limits.nerve_cap);
    std::vector<std::int64_t> lam(pairs.size());
    int b[2];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const int* t = pairs.tuple(i);
        const int g1 = t[0] % n, g2 = t[1] % n;
        const bool odd1 = t[0] >= n, odd2 = t[1] >= n;
        std::int64_t extra = 0;
        if (!odd1 && !odd2) {
            b[0] = g1;
            b[1] = g2;
        } else if (odd1 && !odd2) {
            b[0] = r.real.tau_mor(g1);
            b[1] = g2;
        } else if (!odd1 && odd2) {
            b[0] = r.real.tau_mor(g1);
            b[1] = r.real.tau_mor(g2);
            extra = r.beta.value(g1);
        } else {
            b[0] = g1;
            b[1] = r.real.tau_mor(g2);
            extra = r.beta.value(g1);
        }
        lam[i] = r.lambda.value(base_pairs.index_of(b)) + extra;
    }
    TwistedExtension out(Cochain::zero(semidirect, 1, grading_coefficients(), limits),
                         Cochain(semidirect, 2, phase_coefficients(r.modulus), std::move(lam)));
    require_valid(out, limits);
    return out;
}

TwistedExtension real_to_graded(const RealCentralExtension& r, const Limits& limits)
{
    return real_to_graded(r, share(graded_semidirect(r.real)), limits);
}

}  // namespace twistbench
