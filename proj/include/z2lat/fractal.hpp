#pragma once

#include <cstdint>
#include <optional>

#include "z2lat/box.hpp"
#include "z2lat/errors.hpp"
#include "z2lat/point_set.hpp"

namespace z2lat {

// The level-k sumset X_k = sum_{i=0..k-1} 2^i {+-e_1,...,+-e_d}, built by
// iterating X_j = {+-e_i} + 2 X_{j-1} from X_0 = {origin}. Level k has
// exactly (2d)^k points, and X_k agrees with the limit set on any box of
// radius r once k >= ceil(log2 r) + 2, which is what build_xinf_box uses.

struct FractalLevel {
    int d = 0;
    int k = 0;
    PointSet points;
};

namespace detail {

inline std::uint64_t level_cardinality_guarded(int d, int k) {
    std::uint64_t card = 1;
    const std::uint64_t guard = std::uint64_t(1) << 31;
    for (int i = 0; i < k; ++i) {
        card *= static_cast<std::uint64_t>(2 * d);
        if (card > guard) throw budget_exceeded("level cardinality (2d)^k above guard 2^31");
    }
    return card;
}

// Clip bound for an intermediate stage: a stage-j point p reaches the final
// box of radius r only if |p|_inf <= (r + 2^m - 1) / 2^m, m = remaining steps.
inline std::int64_t stage_clip_bound(std::int64_t r, int remaining) {
    if (remaining >= 62) return INT64_MAX;
    const std::int64_t pow2 = std::int64_t(1) << remaining;
    return r / pow2 + ((r % pow2 + pow2 - 1) / pow2);
}

inline PointSet build_level(int d, int k, std::optional<std::int64_t> clip_radius) {
    if (d < 1) throw invalid_argument_error("dimension must be >= 1");
    if (k < 0) throw invalid_argument_error("level must be >= 0");
    level_cardinality_guarded(d, k);

    PointSet cur = PointSet::single(Point::origin(d));
    const std::size_t dd = static_cast<std::size_t>(d);
    for (int j = 1; j <= k; ++j) {
        std::vector<std::int64_t> next;
        next.reserve(cur.size() * static_cast<std::size_t>(2 * d) * dd);
        const std::int64_t bound =
            clip_radius ? stage_clip_bound(*clip_radius, k - j) : INT64_MAX;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            auto row = cur.row(i);
            for (int axis = 0; axis < d; ++axis) {
                for (int sign : {1, -1}) {
                    bool keep = true;
                    std::size_t base = next.size();
                    for (std::size_t t = 0; t < dd; ++t) {
                        std::int64_t v = detail::checked_mul(row[t], 2);
                        if (static_cast<int>(t) == axis) v = detail::checked_add(v, sign);
                        if (v > bound || v < -bound) { keep = false; break; }
                        next.push_back(v);
                    }
                    if (!keep) next.resize(base);
                }
            }
        }
        cur = PointSet::from_flat(d, std::move(next));
    }
    return cur;
}

} // namespace detail

/// Level-k set of the recurrence; |points| == (2d)^k (guarded at 2^31).
inline FractalLevel build_xk(int d, int k) {
    return FractalLevel{d, k, detail::build_level(d, k, std::nullopt)};
}

/// Level-k set intersected with [-r, r]^d, with intermediate stages clipped
/// to what can still reach the box. Equal to clip(build_xk(d,k).points, box).
inline PointSet build_xk_clipped(int d, int k, std::int64_t r) {
    if (r < 0) throw invalid_argument_error("radius must be >= 0");
    return detail::build_level(d, k, r);
}

inline int xinf_truncation_level(std::int64_t r) {
    int k = 2; // ceil(log2 r) + 2, with ceil(log2 1) = 0
    std::int64_t pow2 = 1;
    while (pow2 < r) {
        pow2 *= 2;
        ++k;
    }
    return k;
}

/// The limit set intersected with [-r, r]^d. Truncation at
/// k = ceil(log2 r) + 2 levels; deeper levels add nothing inside the box.
inline PointSet build_xinf_box(int d, std::int64_t r) {
    if (d < 1) throw invalid_argument_error("dimension must be >= 1");
    if (r < 0) throw invalid_argument_error("radius must be >= 0");
    if (r == 0) return PointSet(d); // limit-set points have odd coordinate sum
    return build_xk_clipped(d, xinf_truncation_level(r), r);
}

/// The cross-condition thickening (limit set + {0, +-e_i}) on [-r, r]^d.
inline PointSet build_xplus_box(int d, std::int64_t r) {
    if (d < 1) throw invalid_argument_error("dimension must be >= 1");
    if (r < 0) throw invalid_argument_error("radius must be >= 0");
    PointSet inner = build_xinf_box(d, detail::checked_add(r, 1));
    std::vector<std::int64_t> shifts(static_cast<std::size_t>(d), 0); // origin
    PointSet shift_set = set_union(PointSet::from_flat(d, std::move(shifts)),
                                   neighbors(Point::origin(d)));
    return clip(minkowski_sum(inner, shift_set), Box::centered(d, r));
}

/// Exact membership test for the limit set, straight from the recurrence:
/// p belongs iff p = e +- 2q with q again a member (or p is a unit vector).
/// Works at any scale without materializing a truncation.
struct XinfMembership {
    int d = 1;

    int dim() const { return d; }

    bool contains(std::span<const std::int64_t> p) const {
        if (static_cast<int>(p.size()) != d) throw dimension_mismatch("limit-set membership query");
        std::vector<std::int64_t> buf(p.begin(), p.end());
        return walk(buf);
    }
    bool contains(const Point& p) const { return contains(p.view()); }

private:
    static bool walk(std::vector<std::int64_t>& p) {
        // members are congruent to a unit vector mod 2: exactly one odd coord
        int odd = -1;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] & 1) {
                if (odd >= 0) return false;
                odd = static_cast<int>(i);
            }
        }
        if (odd < 0) return false;
        bool is_unit = (p[static_cast<std::size_t>(odd)] == 1 || p[static_cast<std::size_t>(odd)] == -1);
        if (is_unit) {
            bool rest_zero = true;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (static_cast<int>(i) != odd && p[i] != 0) { rest_zero = false; break; }
            if (rest_zero) return true;
        }
        // (v -+ 1)/2 for odd v, written so the +-1 never overflows
        const std::int64_t v = p[static_cast<std::size_t>(odd)];
        const std::int64_t half_down = v > 0 ? v / 2 : v / 2 - 1; // (v-1)/2
        for (std::int64_t hj : {half_down, half_down + 1}) {
            std::vector<std::int64_t> q(p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                q[i] = static_cast<int>(i) == odd ? hj : p[i] / 2;
            if (walk(q)) return true;
        }
        return false;
    }
};

} // namespace z2lat
