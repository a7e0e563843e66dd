#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "z2lat/box.hpp"
#include "z2lat/errors.hpp"
#include "z2lat/fractal.hpp"
#include "z2lat/point_set.hpp"

namespace z2lat {

/// Box-occupancy counts of one set at a strictly increasing list of radii.
struct CountSeries {
    std::vector<std::int64_t> radii;
    std::vector<std::uint64_t> counts;
};

struct DimensionFit {
    double slope = 0.0;
    double residual = 0.0;
};

/// counts[i] = |X intersected with the origin-centered box of radius radii[i]|.
inline CountSeries count_in_boxes(const PointSet& x, const std::vector<std::int64_t>& radii) {
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (radii[i] >= radii[i + 1])
            throw invalid_argument_error("radii must be strictly increasing");
    if (!radii.empty() && radii.front() < 1)
        throw invalid_argument_error("radii must be positive");
    CountSeries s;
    s.radii = radii;
    s.counts.assign(radii.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::int64_t norm = linf_norm(x.row(i));
        // one pass per point: bump every radius that admits it
        for (std::size_t j = 0; j < radii.size(); ++j)
            if (norm <= radii[j]) ++s.counts[j];
    }
    return s;
}

enum class SetSource { xk, xinf, xplus };

/// Generator-backed counting: builds the set once at the largest radius
/// (every smaller count is a sub-box of the same set). For `xk` an explicit
/// level counts that fixed set; without one the stabilized truncation level
/// of the largest radius is used, which makes it agree with `xinf`.
inline CountSeries count_in_boxes(SetSource src, int d, const std::vector<std::int64_t>& radii,
                                  std::optional<int> k = std::nullopt) {
    if (radii.empty()) throw invalid_argument_error("radii list is empty");
    const std::int64_t top = radii.back();
    PointSet x;
    switch (src) {
        case SetSource::xk:
            x = k ? build_xk(d, *k).points : build_xk_clipped(d, xinf_truncation_level(top), top);
            break;
        case SetSource::xinf: x = build_xinf_box(d, top); break;
        case SetSource::xplus: x = build_xplus_box(d, top); break;
    }
    return count_in_boxes(x, radii);
}

/// Least-squares slope of ln(count) against ln(radius), plus the RMS
/// deviation of the fit. A zero count is an error, never dropped.
inline DimensionFit fit_dimension(const CountSeries& s) {
    const std::size_t n = s.radii.size();
    if (s.counts.size() != n) throw invalid_argument_error("radii/count length mismatch");
    if (n < 3) throw invalid_argument_error("dimension fit needs at least 3 radii");
    for (std::uint64_t c : s.counts)
        if (c == 0) throw degenerate_input("zero count in dimension fit input");
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::log(static_cast<double>(s.radii[i]));
        ys[i] = std::log(static_cast<double>(s.counts[i]));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw invalid_argument_error("dimension fit needs distinct radii");
    DimensionFit f;
    f.slope = sxy / sxx;
    const double intercept = my - f.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ys[i] - (intercept + f.slope * xs[i]);
        rss += e * e;
    }
    f.residual = std::sqrt(rss / static_cast<double>(n));
    return f;
}

} // namespace z2lat
