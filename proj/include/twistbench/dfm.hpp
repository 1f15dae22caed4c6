#pragma once

#include "twistbench/extension.hpp"

namespace twistbench {

// Twisting triple (d, L, λ) over a cover Γ̃ -> Γ whose grading is induced
// from φ; the extension (L, λ) lives on the cover.
struct DFMTwisting {
    Covering cover;
    std::vector<std::int64_t> d;  // one integer per cover object
    TwistedExtension extension;
};

ValidationReport validate_dfm(const DFMTwisting& t, const Limits& limits = default_limits());

// alpha = d mod 2, extension unchanged
TwoLineDescriptor dfm_to_descriptor(const DFMTwisting& t, const Limits& limits = default_limits());

}  // namespace twistbench
