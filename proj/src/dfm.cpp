#include "twistbench/dfm.hpp"

namespace twistbench {

ValidationReport validate_dfm(const DFMTwisting& t, const Limits& limits)
{
    ValidationReport r;
    const auto& g = *t.cover.groupoid;
    if (t.extension.groupoid() != t.cover.groupoid) {
        r.add("extension base", "the extension must live on the cover groupoid");
        return r;
    }
    if (static_cast<int>(t.d.size()) != g.num_objects()) {
        r.add("d shape", "d needs one value per cover object");
        return r;
    }
    for (int h = 0; h < g.num_morphisms(); ++h) {
        if (g.phi(h) != t.cover.projection.target()->phi(t.cover.projection.mor(h))) {
            r.add("induced grading", "grading of " + g.morphism_id(h) + " is not pulled back from the base");
            break;
        }
    }
    for (int h = 0; h < g.num_morphisms(); ++h)
        if (t.d[g.src(h)] != t.d[g.tgt(h)]) {
            r.add("d locally constant", "d(s γ) != d(t γ) at " + g.morphism_id(h));
            break;
        }
    r.merge(validate_extension(t.extension, limits));
    return r;
}

TwoLineDescriptor dfm_to_descriptor(const DFMTwisting& t, const Limits& limits)
{
    auto r = validate_dfm(t, limits);
    if (!r.ok()) throw InvalidError("invalid DFM twisting", r);
    std::vector<std::int64_t> alpha;
    for (auto v : t.d) alpha.push_back(mod_reduce(v, 2));
    return {t.extension, Cochain(t.cover.groupoid, 0, grading_coefficients(), alpha)};
}

}  // namespace twistbench
