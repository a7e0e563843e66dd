#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <span>
#include <vector>

#include "z2lat/box.hpp"
#include "z2lat/errors.hpp"
#include "z2lat/point.hpp"

namespace z2lat {

namespace detail {

enum class KeepRule { unique, odd_multiplicity };

template <std::size_t N>
void canonicalize_fixed(std::vector<std::int64_t>& flat, KeepRule rule) {
    const std::size_t n = flat.size() / N;
    std::vector<std::array<std::int64_t, N>> rows(n);
    if (n) std::memcpy(rows.data(), flat.data(), flat.size() * sizeof(std::int64_t));
    std::sort(rows.begin(), rows.end());
    std::size_t out = 0;
    if (rule == KeepRule::unique) {
        auto e = std::unique(rows.begin(), rows.end());
        out = static_cast<std::size_t>(e - rows.begin());
    } else {
        // keep rows occurring an odd number of times
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j < n && rows[j] == rows[i]) ++j;
            if ((j - i) & 1) rows[out++] = rows[i];
            i = j;
        }
    }
    flat.resize(out * N);
    if (out) std::memcpy(flat.data(), rows.data(), out * N * sizeof(std::int64_t));
}

inline void canonicalize_generic(std::vector<std::int64_t>& flat, std::size_t d, KeepRule rule) {
    const std::size_t n = flat.size() / d;
    if (n > UINT32_MAX) throw budget_exceeded("row count above the canonicalization guard");
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    auto less = [&](std::uint32_t a, std::uint32_t b) {
        const std::int64_t* pa = flat.data() + static_cast<std::size_t>(a) * d;
        const std::int64_t* pb = flat.data() + static_cast<std::size_t>(b) * d;
        return std::lexicographical_compare(pa, pa + d, pb, pb + d);
    };
    auto eq = [&](std::uint32_t a, std::uint32_t b) {
        const std::int64_t* pa = flat.data() + static_cast<std::size_t>(a) * d;
        const std::int64_t* pb = flat.data() + static_cast<std::size_t>(b) * d;
        return std::equal(pa, pa + d, pb);
    };
    std::sort(idx.begin(), idx.end(), less);
    std::vector<std::int64_t> out;
    out.reserve(flat.size());
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && eq(idx[j], idx[i])) ++j;
        bool keep = rule == KeepRule::unique ? true : ((j - i) & 1);
        if (keep) {
            const std::int64_t* p = flat.data() + static_cast<std::size_t>(idx[i]) * d;
            out.insert(out.end(), p, p + d);
        }
        i = j;
    }
    flat = std::move(out);
}

inline void canonicalize_rows(std::vector<std::int64_t>& flat, std::size_t d, KeepRule rule) {
    switch (d) {
        case 1: canonicalize_fixed<1>(flat, rule); break;
        case 2: canonicalize_fixed<2>(flat, rule); break;
        case 3: canonicalize_fixed<3>(flat, rule); break;
        case 4: canonicalize_fixed<4>(flat, rule); break;
        default: canonicalize_generic(flat, d, rule); break;
    }
}

} // namespace detail

/// Finite set of lattice points, all of one dimension. Stored as a flat,
/// lexicographically sorted, duplicate-free row buffer, so iteration order
/// is the serialization order and equality is plain buffer equality.
/// Immutable after construction.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(int dim) : dim_(dim) {
        if (dim < 1) throw invalid_argument_error("point set dimension must be >= 1");
    }

    /// Takes row-major coordinates, sorts and deduplicates them.
    static PointSet from_flat(int dim, std::vector<std::int64_t> flat) {
        PointSet s(dim);
        if (flat.size() % static_cast<std::size_t>(dim) != 0)
            throw invalid_argument_error("flat buffer length not a multiple of dimension");
        detail::canonicalize_rows(flat, static_cast<std::size_t>(dim), detail::KeepRule::unique);
        s.flat_ = std::move(flat);
        return s;
    }

    static PointSet from_points(int dim, const std::vector<Point>& pts) {
        std::vector<std::int64_t> flat;
        flat.reserve(pts.size() * static_cast<std::size_t>(dim));
        for (const Point& p : pts) {
            if (p.dim() != dim) throw dimension_mismatch("point dimension differs from set dimension");
            flat.insert(flat.end(), p.c.begin(), p.c.end());
        }
        return from_flat(dim, std::move(flat));
    }

    static PointSet single(const Point& p) { return from_points(p.dim(), {p}); }

    int dim() const { return dim_; }
    std::size_t size() const { return dim_ ? flat_.size() / static_cast<std::size_t>(dim_) : 0; }
    bool empty() const { return flat_.empty(); }

    std::span<const std::int64_t> row(std::size_t i) const {
        return {flat_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    Point point(std::size_t i) const {
        auto r = row(i);
        return Point(std::vector<std::int64_t>(r.begin(), r.end()));
    }
    const std::vector<std::int64_t>& flat() const { return flat_; }

    bool contains(std::span<const std::int64_t> p) const {
        if (static_cast<int>(p.size()) != dim_) throw dimension_mismatch("membership query dimension");
        std::size_t lo = 0, hi = size();
        const std::size_t d = static_cast<std::size_t>(dim_);
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            const std::int64_t* r = flat_.data() + mid * d;
            int cmp = 0;
            for (std::size_t i = 0; i < d; ++i) {
                if (r[i] < p[i]) { cmp = -1; break; }
                if (r[i] > p[i]) { cmp = 1; break; }
            }
            if (cmp < 0) lo = mid + 1;
            else if (cmp > 0) hi = mid;
            else return true;
        }
        return false;
    }
    bool contains(const Point& p) const { return contains(p.view()); }

    bool operator==(const PointSet&) const = default;

private:
    int dim_ = 0;
    std::vector<std::int64_t> flat_;
};

/// {a + b : a in A, b in B}, duplicates collapsed.
inline PointSet minkowski_sum(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw dimension_mismatch("minkowski_sum operands");
    constexpr std::size_t kPairGuard = 100'000'000;
    if (!a.empty() && !b.empty() && a.size() > kPairGuard / b.size())
        throw budget_exceeded("minkowski_sum pair count above guard");
    const std::size_t d = static_cast<std::size_t>(a.dim());
    std::vector<std::int64_t> flat;
    flat.reserve(a.size() * b.size() * d);
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto ra = a.row(i);
        for (std::size_t j = 0; j < b.size(); ++j) {
            auto rb = b.row(j);
            for (std::size_t t = 0; t < d; ++t)
                flat.push_back(detail::checked_add(ra[t], rb[t]));
        }
    }
    return PointSet::from_flat(a.dim(), std::move(flat));
}

/// {c * a : a in A}; c must be nonzero so cardinality is preserved.
inline PointSet dilate(const PointSet& a, std::int64_t c) {
    if (c == 0) throw invalid_argument_error("dilate factor must be nonzero");
    std::vector<std::int64_t> flat(a.flat());
    for (auto& v : flat) v = detail::checked_mul(v, c);
    return PointSet::from_flat(a.dim(), std::move(flat));
}

inline PointSet translate(const PointSet& a, std::span<const std::int64_t> delta) {
    if (static_cast<int>(delta.size()) != a.dim()) throw dimension_mismatch("translate delta");
    const std::size_t d = delta.size();
    std::vector<std::int64_t> flat(a.flat());
    for (std::size_t i = 0; i < flat.size(); ++i)
        flat[i] = detail::checked_add(flat[i], delta[i % d]);
    return PointSet::from_flat(a.dim(), std::move(flat));
}

/// The 2d points {x +- e_i}.
inline PointSet neighbors(const Point& x) {
    const int d = x.dim();
    if (d < 1) throw invalid_argument_error("neighbors of a zero-dimensional point");
    std::vector<std::int64_t> flat;
    flat.reserve(static_cast<std::size_t>(2 * d * d));
    for (int i = 0; i < d; ++i) {
        for (int s : {1, -1}) {
            for (int t = 0; t < d; ++t)
                flat.push_back(t == i ? detail::checked_add(x[static_cast<std::size_t>(t)], s)
                                      : x[static_cast<std::size_t>(t)]);
        }
    }
    return PointSet::from_flat(d, std::move(flat));
}

/// The 2d+1 points {x} U {x +- e_i}.
inline PointSet cross(const Point& x) {
    const int d = x.dim();
    if (d < 1) throw invalid_argument_error("cross of a zero-dimensional point");
    std::vector<std::int64_t> flat(x.c.begin(), x.c.end());
    const PointSet nb = neighbors(x);
    flat.insert(flat.end(), nb.flat().begin(), nb.flat().end());
    return PointSet::from_flat(d, std::move(flat));
}

inline PointSet clip(const PointSet& a, const Box& box) {
    if (a.dim() != box.dim()) throw dimension_mismatch("clip box");
    std::vector<std::int64_t> flat;
    flat.reserve(a.flat().size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto r = a.row(i);
        if (box.contains(r)) flat.insert(flat.end(), r.begin(), r.end());
    }
    return PointSet::from_flat(a.dim(), std::move(flat));
}

inline PointSet set_union(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw dimension_mismatch("set_union operands");
    std::vector<std::int64_t> flat(a.flat());
    flat.insert(flat.end(), b.flat().begin(), b.flat().end());
    return PointSet::from_flat(a.dim(), std::move(flat));
}

inline bool is_subset(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw dimension_mismatch("is_subset operands");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!b.contains(a.row(i))) return false;
    return true;
}

inline bool disjoint(const PointSet& a, const PointSet& b) {
    if (a.dim() != b.dim()) throw dimension_mismatch("disjoint operands");
    const PointSet& small = a.size() <= b.size() ? a : b;
    const PointSet& big = a.size() <= b.size() ? b : a;
    for (std::size_t i = 0; i < small.size(); ++i)
        if (big.contains(small.row(i))) return false;
    return true;
}

} // namespace z2lat
