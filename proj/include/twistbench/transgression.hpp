#pragma once

#include "twistbench/extension.hpp"

namespace twistbench {

// Skeletal multiplicative structure on the trivial gerbe over a finite
// group: a 3-cochain ω with ω(a,b,c) stored at (a·n + b)·n + c.
struct MultiplicativeTwisting {
    GroupTable group;
    std::int64_t modulus;
    std::vector<std::int64_t> omega;

    std::int64_t at(int a, int b, int c) const
    {
        const int n = group.order();
        return omega[(static_cast<std::size_t>(a) * n + b) * n + c];
    }
};

ValidationReport validate_multiplicative(const MultiplicativeTwisting& t, const Limits& limits = default_limits());
// ω as a 3-cochain on BG with trivial coefficients
Cochain omega_cochain(const MultiplicativeTwisting& t, const GroupoidPtr& delooped);

// The extension (c ≡ 0, φ ≡ 1) on G⫽G obtained by comparing the two
// composites of skeletal 2-isomorphisms that move the carrier V_x past a
// product a⊗b. `conjugation` must be conjugation_groupoid(t.group).
TwistedExtension transgress(const MultiplicativeTwisting& t, const GroupoidPtr& conjugation,
                            const Limits& limits = default_limits());
TwistedExtension transgress(const MultiplicativeTwisting& t, const Limits& limits = default_limits());

}  // namespace twistbench
