#pragma once

#include <algorithm>
#include <cmath>

namespace synthmot {

/// Axis-aligned image-space bounding box. `left`/`top` is the top-left corner
/// in pixels; extents must stay positive for a box to be meaningful.
struct Bbox {
    double left = 0.0;
    double top = 0.0;
    double width = 0.0;
    double height = 0.0;

    double right() const { return left + width; }
    double bottom() const { return top + height; }
    double area() const { return width * height; }
    double diagonal() const { return std::sqrt(width * width + height * height); }

    bool valid() const {
        return width > 0.0 && height > 0.0 && std::isfinite(left) && std::isfinite(top) &&
               std::isfinite(width) && std::isfinite(height);
    }

    bool operator==(const Bbox& o) const {
        return left == o.left && top == o.top && width == o.width && height == o.height;
    }
};

inline double intersection_area(const Bbox& a, const Bbox& b) {
    double w = std::min(a.right(), b.right()) - std::max(a.left, b.left);
    double h = std::min(a.bottom(), b.bottom()) - std::max(a.top, b.top);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

}  // namespace synthmot
