#pragma once

#include <cstdint>

#include "z2lat/point.hpp"

namespace z2lat {

/// Axis-aligned cube in the max metric: all p with max_dist(p, center) <= radius.
struct Box {
    Point center;
    std::int64_t radius = 0;

    Box() = default;
    Box(Point c, std::int64_t r) : center(std::move(c)), radius(r) {
        if (r < 0) throw invalid_argument_error("box radius must be nonnegative");
    }

    static Box centered(int d, std::int64_t r) { return Box(Point::origin(d), r); }

    int dim() const { return center.dim(); }

    bool contains(std::span<const std::int64_t> p) const {
        return max_dist(p, center.view()) <= radius;
    }
    bool contains(const Point& p) const { return contains(p.view()); }

    /// Points whose whole cross (step `reach`) is visible inside the box.
    bool interior_contains(std::span<const std::int64_t> p, std::int64_t reach = 1) const {
        return radius >= reach && max_dist(p, center.view()) <= radius - reach;
    }

    bool operator==(const Box&) const = default;
};

} // namespace z2lat
