#pragma once

#include <string>

namespace synthmot {

/// One of the eight environment ablations: any combination of a video/procedural
/// background (B), turbidity (T), and floating distractors (D).
struct EnvironmentVariant {
    bool background = false;
    bool turbidity = false;
    bool distractors = false;

    bool operator==(const EnvironmentVariant& o) const {
        return background == o.background && turbidity == o.turbidity &&
               distractors == o.distractors;
    }

    /// Canonical letter form in B,T,D order; empty string for the plain variant.
    std::string letters() const {
        std::string s;
        if (background) s += 'B';
        if (turbidity) s += 'T';
        if (distractors) s += 'D';
        return s;
    }
};

/// Parses "none", "" or any duplicate-free subset of the letters B, T, D
/// (case-sensitive, any order). Throws ValidationError otherwise.
EnvironmentVariant parse_variant(const std::string& text);

/// All eight variants in a fixed order: none, B, T, D, TD, BT, BD, BTD.
const EnvironmentVariant* all_variants();
inline constexpr int kVariantCount = 8;

}  // namespace synthmot
