#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "z2lat/box.hpp"
#include "z2lat/errors.hpp"
#include "z2lat/parallel.hpp"
#include "z2lat/point_set.hpp"

namespace z2lat {

// Constructive walks inside a supportive set: a cross centered one step
// ahead of a member point must contain a second member, which yields a
// deterministic forward step, a walk to any forward distance r (landing with
// forward component r or r+1 and l1 error at most r), and iterated walks
// over direction sequences with shrinking radii.

/// Any set we can walk in: a dimension and an exact membership test.
template <class S>
concept LatticeSet = requires(const S& s, std::span<const std::int64_t> p) {
    { s.dim() } -> std::convertible_to<int>;
    { s.contains(p) } -> std::convertible_to<bool>;
};

/// Direction index m in [1, 2d]: 1 -> +e1, 2 -> -e1, 3 -> +e2, ...
inline Point unit_direction(int d, int m) {
    if (m < 1 || m > 2 * d) throw invalid_argument_error("direction index out of range");
    return Point::unit(d, (m - 1) / 2, (m % 2 == 1) ? 1 : -1);
}

/// 0-based axis of a direction index.
inline int direction_axis(int m) { return (m - 1) / 2; }

/// Two direction indices naming one axis with opposite signs.
inline bool opposing(int a, int b) {
    return a != b && direction_axis(a) == direction_axis(b);
}

/// Walk radius schedule: level j uses 2^(j+2) - 2.
inline std::int64_t walk_radius(int level) {
    if (level < 0 || level > 60) throw invalid_argument_error("walk radius level out of range");
    return (std::int64_t(1) << (level + 2)) - 2;
}

/// True when every two entries fewer than k apart use distinct axes.
inline bool is_k_good(const std::vector<int>& entries, int k) {
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size() && j - i < static_cast<std::size_t>(k); ++j)
            if (direction_axis(entries[i]) == direction_axis(entries[j])) return false;
    return true;
}

struct GoodSequence {
    int k = 1;
    std::vector<int> entries; // direction indices in [1, 2d]

    std::size_t length() const { return entries.size(); }

    static GoodSequence make(int d, int k, std::vector<int> entries) {
        if (k < 1) throw invalid_argument_error("separation parameter must be >= 1");
        for (int m : entries)
            if (m < 1 || m > 2 * d) throw invalid_argument_error("direction index out of range");
        if (!is_k_good(entries, k))
            throw invalid_argument_error("sequence violates the k-goodness separation");
        return GoodSequence{k, std::move(entries)};
    }
};

namespace detail {

template <LatticeSet S>
bool member(const S& x, const Point& p) {
    return x.contains(std::span<const std::int64_t>(p.c.data(), p.c.size()));
}

inline std::string format_coords(const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(p.c[i]);
    }
    return s;
}

inline void require_cross_visible(const std::optional<Box>& region, const Point& center) {
    if (region && !region->interior_contains(center.view(), 1))
        throw region_too_small("cross at " + format_coords(center) +
                               " is not fully visible in the trusted region");
}

} // namespace detail

/// One supportive step from x in direction e: a member of X in the cross
/// centered at x+e, different from x. Deterministic candidate order:
/// x+2e, then x+e, then x+e+eps_m for increasing m, skipping the axis of e.
/// The forward component of the step is 1 or 2.
template <LatticeSet S>
Point supportive_step(const S& x_set, const std::optional<Box>& region, const Point& x,
                      const Point& e) {
    const int d = x.dim();
    const Point center = add(x, e);
    detail::require_cross_visible(region, center);
    Point cand = add(center, e); // x + 2e
    if (detail::member(x_set, cand)) return cand;
    if (detail::member(x_set, center)) return center;
    int e_axis = -1;
    for (int i = 0; i < d; ++i)
        if (e[static_cast<std::size_t>(i)] != 0) e_axis = i;
    for (int m = 1; m <= 2 * d; ++m) {
        if (direction_axis(m) == e_axis) continue;
        cand = add(center, unit_direction(d, m));
        if (detail::member(x_set, cand)) return cand;
    }
    throw supportiveness_breach(center.c, "cross at " + detail::format_coords(center) +
                                              " meets the set only at the start point");
}

struct WalkStep {
    Point landing;          // y with forward component r or r+1
    Point offset;           // y - x - r*e, the residual displacement
    std::int64_t forward;   // (y - x, e)
    std::size_t steps;      // iterations used
};

/// Iterated steps until the forward component of (current - x) reaches r or
/// r+1. Guarantees on return: forward in {r, r+1}, (offset, e) in {0, 1},
/// and l1(offset) <= r.
template <LatticeSet S>
WalkStep walk_to_distance(const S& x_set, const std::optional<Box>& region, const Point& x,
                          const Point& e, std::int64_t r) {
    if (r < 1) throw invalid_argument_error("walk distance must be >= 1");
    if (!detail::member(x_set, x))
        throw invalid_argument_error("walk start point is not in the set");
    Point cur = x;
    std::int64_t forward = 0;
    std::size_t steps = 0;
    while (forward < r) {
        cur = supportive_step(x_set, region, cur, e);
        forward = dot(sub(cur, x).view(), e.view());
        ++steps;
    }
    const Point target_offset = sub(sub(cur, x), scale(e, r));
    WalkStep out{cur, target_offset, forward, steps};
    // the walk construction makes these impossible; fail loudly if broken
    if (forward != r && forward != r + 1)
        throw error("walk landed with forward component " + std::to_string(forward));
    const std::int64_t a_dot_e = dot(out.offset.view(), e.view());
    if (a_dot_e != 0 && a_dot_e != 1)
        throw error("walk residual has forward part " + std::to_string(a_dot_e));
    if (l1_norm(out.offset.view()) > r)
        throw error("walk residual exceeds the l1 bound");
    return out;
}

struct WalkRecord {
    Point start;
    GoodSequence sequence;
    std::vector<std::int64_t> radii_schedule; // radius used at each leg
    std::vector<Point> waypoints;             // length n+1, waypoints[0] = start
    std::int64_t psi = 0;                     // (end - start, eps_{a_0}); 0 for empty
};

/// Iterated walk: leg m goes in direction eps_{a_m} to radius
/// walk_radius(n - m) where n is the sequence length.
template <LatticeSet S>
WalkRecord q_walk(const S& x_set, const std::optional<Box>& region, const Point& x,
                  const GoodSequence& a) {
    const int d = x.dim();
    WalkRecord rec;
    rec.start = x;
    rec.sequence = a;
    rec.waypoints.push_back(x);
    const int n = static_cast<int>(a.length());
    Point cur = x;
    for (int m = 0; m < n; ++m) {
        const Point e = unit_direction(d, a.entries[static_cast<std::size_t>(m)]);
        const std::int64_t r = walk_radius(n - m);
        rec.radii_schedule.push_back(r);
        cur = walk_to_distance(x_set, region, cur, e, r).landing;
        rec.waypoints.push_back(cur);
    }
    rec.psi = n == 0 ? 0
                     : dot(sub(cur, x).view(),
                           unit_direction(d, a.entries[0]).view());
    return rec;
}

/// Number of k-good sequences of length n over 2d direction indices:
/// position i has 2d - 2*min(i, k-1) admissible choices.
inline std::uint64_t count_k_good(int d, int n, int k) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        const int blocked = std::min(i, k - 1);
        const std::int64_t choices = 2 * static_cast<std::int64_t>(d) - 2 * blocked;
        if (choices <= 0) return 0;
        if (total > UINT64_MAX / static_cast<std::uint64_t>(choices)) return UINT64_MAX;
        total *= static_cast<std::uint64_t>(choices);
    }
    return total;
}

/// All k-good sequences of length n in lexicographic order.
inline std::vector<std::vector<int>> enumerate_k_good(int d, int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    cur.reserve(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        const int i = static_cast<int>(cur.size());
        for (int m = 1; m <= 2 * d; ++m) {
            bool ok = true;
            for (int back = 1; back < k && back <= i; ++back)
                if (direction_axis(cur[static_cast<std::size_t>(i - back)]) == direction_axis(m)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(m);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

struct CollisionClass {
    Point endpoint;
    std::vector<std::size_t> members; // indices into CensusResult::sequences
};

struct CensusResult {
    std::vector<std::vector<int>> sequences;
    std::vector<Point> endpoints; // parallel to sequences
    std::vector<std::int64_t> psis;
    std::size_t distinct_endpoints = 0;
    std::size_t max_multiplicity = 0;
    std::vector<CollisionClass> collisions; // classes of size >= 2, by endpoint
    std::vector<std::pair<std::size_t, std::size_t>> opposing_pairs; // must stay empty
    bool sampled = false;
    std::uint64_t seed = 0;
};

namespace detail {

// platform-stable bounded draw (std distributions are not portable)
template <class Rng>
std::uint64_t bounded_draw(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

} // namespace detail

/// Evaluates q_walk over k-good sequences of length n: all of them when
/// their count fits the budget, otherwise `budget` distinct sequences drawn
/// by seeded rejection sampling. Reports endpoint collisions; any colliding
/// pair whose first differing entries oppose each other is recorded (the
/// walk construction promises there are none).
template <LatticeSet S>
CensusResult collision_census(const S& x_set, const std::optional<Box>& region, const Point& x,
                              int n, int k, std::uint64_t sample_budget, std::uint64_t seed,
                              int threads = 1) {
    const int d = x.dim();
    if (n < 0) throw invalid_argument_error("sequence length must be >= 0");
    CensusResult res;
    res.seed = seed;
    const std::uint64_t total = count_k_good(d, n, k);
    if (total <= sample_budget) {
        res.sequences = enumerate_k_good(d, n, k);
    } else {
        res.sampled = true;
        std::mt19937_64 rng(seed);
        std::vector<std::vector<int>> draws;
        while (draws.size() < sample_budget) {
            std::vector<int> cand(static_cast<std::size_t>(n));
            for (auto& m : cand)
                m = static_cast<int>(detail::bounded_draw(rng, static_cast<std::uint64_t>(2 * d))) + 1;
            if (is_k_good(cand, k)) draws.push_back(std::move(cand));
        }
        std::sort(draws.begin(), draws.end());
        draws.erase(std::unique(draws.begin(), draws.end()), draws.end());
        res.sequences = std::move(draws);
    }

    const std::size_t count = res.sequences.size();
    res.endpoints.assign(count, Point{});
    res.psis.assign(count, 0);
    for_chunks(count, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t i = begin; i < end; ++i) {
            const WalkRecord rec =
                q_walk(x_set, region, x, GoodSequence::make(d, k, res.sequences[i]));
            res.endpoints[i] = rec.waypoints.back();
            res.psis[i] = rec.psi;
        }
    });

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (res.endpoints[a] != res.endpoints[b]) return res.endpoints[a] < res.endpoints[b];
        return res.sequences[a] < res.sequences[b];
    });
    std::size_t i = 0;
    while (i < count) {
        std::size_t j = i;
        while (j < count && res.endpoints[order[j]] == res.endpoints[order[i]]) ++j;
        ++res.distinct_endpoints;
        res.max_multiplicity = std::max(res.max_multiplicity, j - i);
        if (j - i >= 2) {
            CollisionClass cls;
            cls.endpoint = res.endpoints[order[i]];
            for (std::size_t t = i; t < j; ++t) cls.members.push_back(order[t]);
            // first differing entries of a colliding pair must not oppose
            for (std::size_t aa = 0; aa < cls.members.size(); ++aa) {
                for (std::size_t bb = aa + 1; bb < cls.members.size(); ++bb) {
                    const auto& sa = res.sequences[cls.members[aa]];
                    const auto& sb = res.sequences[cls.members[bb]];
                    for (std::size_t t = 0; t < sa.size(); ++t) {
                        if (sa[t] == sb[t]) continue;
                        if (opposing(sa[t], sb[t]))
                            res.opposing_pairs.emplace_back(cls.members[aa], cls.members[bb]);
                        break;
                    }
                }
            }
            res.collisions.push_back(std::move(cls));
        }
        i = j;
    }
    return res;
}

} // namespace z2lat
