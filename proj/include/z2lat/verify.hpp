#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "z2lat/box.hpp"
#include "z2lat/errors.hpp"
#include "z2lat/io.hpp"
#include "z2lat/parallel.hpp"
#include "z2lat/point_set.hpp"

namespace z2lat {

// Set-level predicates, checked exhaustively over the judged part of a box.
// Only points whose whole probe footprint is visible inside the region are
// judged (max-dist <= radius - 1, or radius - 2 for the step-2 variant);
// membership queries against X itself are global. Each check exists in two
// interchangeable strategies: a dense scan over the judged cells, and a
// sparse scan over the footprint of X. They must agree exactly; `automatic`
// picks by estimated cost.

enum class Predicate { harmonic, cross, supportive, harmonic2 };

enum class ScanStrategy { automatic, dense, sparse };

inline const char* predicate_name(Predicate p) {
    switch (p) {
        case Predicate::harmonic: return "harmonic";
        case Predicate::cross: return "cross";
        case Predicate::supportive: return "supportive";
        case Predicate::harmonic2: return "harmonic2";
    }
    return "?";
}

struct ViolationReport {
    Predicate predicate = Predicate::harmonic;
    Box region;
    PointSet witnesses;

    bool clean() const { return witnesses.empty(); }
};

namespace detail {

// probe offsets around a judged point, one flat row per probe
inline std::vector<std::int64_t> probe_offsets(Predicate pred, int d) {
    std::vector<std::int64_t> out;
    auto push_units = [&](std::int64_t step) {
        for (int i = 0; i < d; ++i)
            for (int s : {1, -1})
                for (int t = 0; t < d; ++t)
                    out.push_back(t == i ? s * step : 0);
    };
    switch (pred) {
        case Predicate::harmonic: push_units(1); break;
        case Predicate::harmonic2: push_units(2); break;
        case Predicate::cross:
        case Predicate::supportive:
            out.assign(static_cast<std::size_t>(d), 0);
            push_units(1);
            break;
    }
    return out;
}

inline std::int64_t probe_reach(Predicate pred) {
    return pred == Predicate::harmonic2 ? 2 : 1;
}

// witness rule given the footprint count at y
inline bool is_witness(Predicate pred, std::size_t count, bool y_in_x) {
    switch (pred) {
        case Predicate::harmonic:
        case Predicate::harmonic2:
            return (count & 1) != 0;
        case Predicate::cross:
            return count == 1;
        case Predicate::supportive:
            // a lone center is allowed; a lone arm point is not
            return count == 1 && !y_in_x;
    }
    return false;
}

inline std::uint64_t judged_volume(const Box& region, std::int64_t reach) {
    if (region.radius < reach) return 0;
    const std::int64_t side = 2 * (region.radius - reach) + 1;
    std::uint64_t vol = 1;
    for (int i = 0; i < region.dim(); ++i) {
        if (side > 0 && vol > (std::uint64_t(1) << 62) / static_cast<std::uint64_t>(side))
            return UINT64_MAX;
        vol *= static_cast<std::uint64_t>(side);
    }
    return vol;
}

inline void decode_cell(std::uint64_t idx, const Box& region, std::int64_t reach,
                        std::vector<std::int64_t>& out) {
    const std::int64_t side = 2 * (region.radius - reach) + 1;
    const int d = region.dim();
    for (int i = d - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] =
            region.center[static_cast<std::size_t>(i)] - (region.radius - reach) +
            static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(side));
        idx /= static_cast<std::uint64_t>(side);
    }
}

inline PointSet scan_dense(Predicate pred, const PointSet& x, const Box& region, int threads) {
    const int d = region.dim();
    const std::int64_t reach = probe_reach(pred);
    const std::uint64_t vol = judged_volume(region, reach);
    if (vol == UINT64_MAX) throw budget_exceeded("dense scan volume above guard");
    const std::vector<std::int64_t> offsets = probe_offsets(pred, d);
    const std::size_t probes = offsets.size() / static_cast<std::size_t>(d);

    std::vector<std::vector<std::int64_t>> chunk_hits(chunk_count(vol, threads));
    for_chunks(vol, threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        std::vector<std::int64_t> y(static_cast<std::size_t>(d));
        std::vector<std::int64_t> probe(static_cast<std::size_t>(d));
        auto& hits = chunk_hits[chunk];
        for (std::size_t idx = begin; idx < end; ++idx) {
            decode_cell(idx, region, reach, y);
            std::size_t count = 0;
            bool y_in_x = false;
            for (std::size_t pi = 0; pi < probes; ++pi) {
                bool center = true;
                for (std::size_t t = 0; t < static_cast<std::size_t>(d); ++t) {
                    const std::int64_t off = offsets[pi * static_cast<std::size_t>(d) + t];
                    probe[t] = detail::checked_add(y[t], off);
                    if (off != 0) center = false;
                }
                if (x.contains(std::span<const std::int64_t>(probe))) {
                    ++count;
                    if (center) y_in_x = true;
                }
            }
            if (is_witness(pred, count, y_in_x)) hits.insert(hits.end(), y.begin(), y.end());
        }
    });
    std::vector<std::int64_t> flat;
    for (auto& h : chunk_hits) flat.insert(flat.end(), h.begin(), h.end());
    return PointSet::from_flat(d, std::move(flat));
}

inline PointSet scan_sparse(Predicate pred, const PointSet& x, const Box& region) {
    const int d = region.dim();
    const std::size_t dd = static_cast<std::size_t>(d);
    const std::int64_t reach = probe_reach(pred);
    // y sees x at offset o exactly when y = x - o; offset shapes are symmetric
    const std::vector<std::int64_t> offsets = probe_offsets(pred, d);
    const std::size_t probes = offsets.size() / dd;
    std::vector<std::int64_t> cand;
    cand.reserve(x.size() * probes * dd);
    std::vector<std::int64_t> y(dd);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto row = x.row(i);
        for (std::size_t pi = 0; pi < probes; ++pi) {
            for (std::size_t t = 0; t < dd; ++t)
                y[t] = detail::checked_sub(row[t], offsets[pi * dd + t]);
            if (region.interior_contains(std::span<const std::int64_t>(y), reach))
                cand.insert(cand.end(), y.begin(), y.end());
        }
    }
    // multiplicity of each candidate = footprint count at that judged point
    const std::size_t n = cand.size() / dd;
    if (n > UINT32_MAX) throw budget_exceeded("sparse scan candidate count above guard");
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    auto key = [&](std::uint32_t a) { return cand.data() + static_cast<std::size_t>(a) * dd; };
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(key(a), key(a) + dd, key(b), key(b) + dd);
    });
    std::vector<std::int64_t> flat;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && std::equal(key(idx[i]), key(idx[i]) + dd, key(idx[j]))) ++j;
        const std::int64_t* p = key(idx[i]);
        const bool y_in_x = pred == Predicate::supportive
                                ? x.contains(std::span<const std::int64_t>(p, dd))
                                : false;
        if (is_witness(pred, j - i, y_in_x)) flat.insert(flat.end(), p, p + dd);
        i = j;
    }
    return PointSet::from_flat(d, std::move(flat));
}

inline ViolationReport run_check(Predicate pred, const PointSet& x, const Box& region,
                                 ScanStrategy strategy, int threads) {
    if (x.dim() != region.dim()) throw dimension_mismatch("check region");
    if (region.radius < probe_reach(pred))
        throw invalid_argument_error("region radius too small for this predicate");
    if (strategy == ScanStrategy::automatic) {
        const std::uint64_t vol = judged_volume(region, probe_reach(pred));
        const std::uint64_t sparse_cost =
            static_cast<std::uint64_t>(x.size()) * (2 * static_cast<std::uint64_t>(x.dim()) + 1);
        strategy = sparse_cost < vol ? ScanStrategy::sparse : ScanStrategy::dense;
    }
    PointSet witnesses = strategy == ScanStrategy::dense ? scan_dense(pred, x, region, threads)
                                                         : scan_sparse(pred, x, region);
    return ViolationReport{pred, region, std::move(witnesses)};
}

} // namespace detail

/// Witnesses: judged points with an odd number of neighbors in X. Empty
/// exactly when the characteristic function of X is parity-harmonic on the
/// judged region.
inline ViolationReport harmonic_violations(const PointSet& x, const Box& region,
                                           ScanStrategy strategy = ScanStrategy::automatic,
                                           int threads = 1) {
    return detail::run_check(Predicate::harmonic, x, region, strategy, threads);
}

/// Witnesses: judged points whose cross meets X in exactly one point.
inline ViolationReport cross_violations(const PointSet& x, const Box& region,
                                        ScanStrategy strategy = ScanStrategy::automatic,
                                        int threads = 1) {
    return detail::run_check(Predicate::cross, x, region, strategy, threads);
}

/// Witnesses: judged points whose cross meets X in exactly one point AND
/// that point is an arm, not the center. Weaker than the cross condition.
inline ViolationReport supportive_violations(const PointSet& x, const Box& region,
                                             ScanStrategy strategy = ScanStrategy::automatic,
                                             int threads = 1) {
    return detail::run_check(Predicate::supportive, x, region, strategy, threads);
}

/// Witnesses: judged points with an odd number of step-2 neighbors in X.
inline ViolationReport harmonic2_violations(const PointSet& x, const Box& region,
                                            ScanStrategy strategy = ScanStrategy::automatic,
                                            int threads = 1) {
    return detail::run_check(Predicate::harmonic2, x, region, strategy, threads);
}

inline void write_report(std::ostream& os, const ViolationReport& rep) {
    os << "# predicate=" << predicate_name(rep.predicate)
       << " region_center=" << format_point(rep.region.center.view())
       << " region_radius=" << rep.region.radius
       << " violations=" << rep.witnesses.size() << "\n";
    for (std::size_t i = 0; i < rep.witnesses.size(); ++i)
        os << format_point(rep.witnesses.row(i)) << "\n";
}

} // namespace z2lat
