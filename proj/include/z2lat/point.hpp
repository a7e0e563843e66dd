#pragma once

#include <cstdint>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "z2lat/errors.hpp"

namespace z2lat {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw coordinate_overflow("coordinate overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw coordinate_overflow("coordinate overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw coordinate_overflow("coordinate overflow in multiplication");
    return r;
}

inline std::int64_t checked_abs_diff(std::int64_t a, std::int64_t b) {
    // |a - b| as a nonnegative int64; overflows only for a full-range spread.
    std::int64_t d = checked_sub(a, b);
    if (d == INT64_MIN)
        throw coordinate_overflow("coordinate overflow in absolute difference");
    return d < 0 ? -d : d;
}

} // namespace detail

/// A point of the integer lattice. Coordinates are 64-bit signed; every
/// arithmetic path checks for overflow and throws instead of wrapping.
struct Point {
    std::vector<std::int64_t> c;

    Point() = default;
    explicit Point(std::vector<std::int64_t> coords) : c(std::move(coords)) {}
    Point(std::initializer_list<std::int64_t> coords) : c(coords) {}

    static Point origin(int d) { return Point(std::vector<std::int64_t>(static_cast<std::size_t>(d), 0)); }

    /// Unit vector along `axis` (0-based) with the given sign.
    static Point unit(int d, int axis, int sign) {
        Point p = origin(d);
        p.c[static_cast<std::size_t>(axis)] = sign >= 0 ? 1 : -1;
        return p;
    }

    int dim() const { return static_cast<int>(c.size()); }
    std::int64_t operator[](std::size_t i) const { return c[i]; }
    std::int64_t& operator[](std::size_t i) { return c[i]; }

    std::span<const std::int64_t> view() const { return {c.data(), c.size()}; }

    // lexicographic, first coordinate most significant
    auto operator<=>(const Point&) const = default;
};

inline void require_same_dim(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    if (a.size() != b.size())
        throw dimension_mismatch("points of dimension " + std::to_string(a.size()) +
                                 " and " + std::to_string(b.size()));
}

/// Sum of coordinate-wise absolute differences (the l1 metric).
inline std::int64_t manhattan(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    require_same_dim(a, b);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = detail::checked_add(s, detail::checked_abs_diff(a[i], b[i]));
    return s;
}

/// Largest coordinate-wise absolute difference (the max metric).
inline std::int64_t max_dist(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    require_same_dim(a, b);
    std::int64_t m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = detail::checked_abs_diff(a[i], b[i]);
        if (d > m) m = d;
    }
    return m;
}

inline std::int64_t manhattan(const Point& a, const Point& b) { return manhattan(a.view(), b.view()); }
inline std::int64_t max_dist(const Point& a, const Point& b) { return max_dist(a.view(), b.view()); }

inline std::int64_t l1_norm(std::span<const std::int64_t> p) {
    std::int64_t s = 0;
    for (std::int64_t v : p) {
        if (v == INT64_MIN) throw coordinate_overflow("coordinate overflow in l1 norm");
        s = detail::checked_add(s, v < 0 ? -v : v);
    }
    return s;
}

inline std::int64_t linf_norm(std::span<const std::int64_t> p) {
    std::int64_t m = 0;
    for (std::int64_t v : p) {
        if (v == INT64_MIN) throw coordinate_overflow("coordinate overflow in linf norm");
        std::int64_t a = v < 0 ? -v : v;
        if (a > m) m = a;
    }
    return m;
}

inline std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    require_same_dim(a, b);
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = detail::checked_add(s, detail::checked_mul(a[i], b[i]));
    return s;
}

inline Point add(const Point& a, const Point& b) {
    require_same_dim(a.view(), b.view());
    Point r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = detail::checked_add(r.c[i], b.c[i]);
    return r;
}

inline Point sub(const Point& a, const Point& b) {
    require_same_dim(a.view(), b.view());
    Point r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = detail::checked_sub(r.c[i], b.c[i]);
    return r;
}

inline Point scale(const Point& a, std::int64_t f) {
    Point r = a;
    for (auto& v : r.c) v = detail::checked_mul(v, f);
    return r;
}

} // namespace z2lat
