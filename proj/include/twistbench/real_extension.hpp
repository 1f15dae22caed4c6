#pragma once

#include "twistbench/extension.hpp"

namespace twistbench {

// Real central extension of an ungraded groupoid with involution τ: an
// untwisted 2-cocycle λ and a Real structure β on the trivialized line.
struct RealCentralExtension {
    RealStructure real;
    std::int64_t modulus;
    Cochain lambda;  // level 2
    Cochain beta;    // level 1
};

// checks δλ = 0, β(τγ) = β(γ) and
// β(γ1∘γ2) - λ(γ1,γ2) = β(γ1) + β(γ2) + λ(τγ1, τγ2)
ValidationReport validate_real_extension(const RealCentralExtension& r, const Limits& limits = default_limits());

// The extension on Gr(Γ,τ) given by
//   λ̃((γ1,+),(γ2,+)) = λ(γ1,γ2)
//   λ̃((γ1,-),(γ2,+)) = λ(τγ1,γ2)
//   λ̃((γ1,+),(γ2,-)) = λ(τγ1,τγ2) + β(γ1)
//   λ̃((γ1,-),(γ2,-)) = λ(γ1,τγ2) + β(γ1)
// with c ≡ 0. `semidirect` must be graded_semidirect(r.real).
TwistedExtension real_to_graded(const RealCentralExtension& r, const GroupoidPtr& semidirect,
                                const Limits& limits = default_limits());
TwistedExtension real_to_graded(const RealCentralExtension& r, const Limits& limits = default_limits());

}  // namespace twistbench
