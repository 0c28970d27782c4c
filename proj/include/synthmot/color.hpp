#pragma once

#include <algorithm>

namespace synthmot {

/// Linear RGB, channels in [0, 1].
struct Color {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    bool operator==(const Color& o) const { return r == o.r && g == o.g && b == o.b; }
};

inline Color lerp(const Color& a, const Color& b, double t) {
    return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

inline Color clamped(const Color& c) { return {clamp01(c.r), clamp01(c.g), clamp01(c.b)}; }

}  // namespace synthmot
