#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <z2lat/z2lat.hpp>

#include "oracles.hpp"

using namespace z2lat;

TEST_CASE("counts at odd-integer truncation") {
    const PointSet x = build_xinf_box(1, 5);
    const CountSeries s = count_in_boxes(x, {1, 3, 5});
    CHECK(s.counts == std::vector<std::uint64_t>{2, 4, 6});
}

TEST_CASE("counts of the empty set are zero") {
    const CountSeries s = count_in_boxes(PointSet(2), {1, 2, 4});
    CHECK(s.counts == std::vector<std::uint64_t>{0, 0, 0});
}

TEST_CASE("radii validation") {
    CHECK_THROWS_AS(count_in_boxes(PointSet(1), {4, 2}), invalid_argument_error);
    CHECK_THROWS_AS(count_in_boxes(PointSet(1), {0, 2}), invalid_argument_error);
}

TEST_CASE("exact power law fits exactly") {
    CountSeries s;
    for (int j = 1; j <= 8; ++j) {
        s.radii.push_back(std::int64_t(1) << j);
        std::uint64_t c = 1;
        for (int t = 0; t < j; ++t) c *= 4; // (2d)^j at d=2
        s.counts.push_back(c);
    }
    const DimensionFit f = fit_dimension(s);
    CHECK(std::abs(f.slope - 2.0) < 1e-9);
    CHECK(f.residual < 1e-9);

    // cross-check the slope against an independent formula
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < s.radii.size(); ++i) {
        xs.push_back(std::log(static_cast<double>(s.radii[i])));
        ys.push_back(std::log(static_cast<double>(s.counts[i])));
    }
    CHECK(std::abs(f.slope - oracles::ref_slope(xs, ys)) < 1e-12);
}

TEST_CASE("degenerate counts are an error") {
    CountSeries s;
    s.radii = {2, 4, 8};
    s.counts = {1, 0, 4};
    CHECK_THROWS_AS(fit_dimension(s), degenerate_input);
    s.counts = {1, 2};
    CHECK_THROWS_AS(fit_dimension(s), invalid_argument_error); // length mismatch caught by size
}

TEST_CASE("fit needs at least three radii") {
    CountSeries s;
    s.radii = {2, 4};
    s.counts = {1, 2};
    CHECK_THROWS_AS(fit_dimension(s), invalid_argument_error);
}

TEST_CASE("limit-set slope in one dimension") {
    std::vector<std::int64_t> radii;
    for (int j = 3; j <= 10; ++j) radii.push_back(std::int64_t(1) << j);
    const PointSet x = build_xinf_box(1, radii.back());
    const DimensionFit f = fit_dimension(count_in_boxes(x, radii));
    CHECK(f.slope > 0.95);
    CHECK(f.slope < 1.05);
}

TEST_CASE("limit-set slope in two dimensions") {
    std::vector<std::int64_t> radii;
    for (int j = 3; j <= 9; ++j) radii.push_back(std::int64_t(1) << j);
    const PointSet x = build_xinf_box(2, radii.back());
    const DimensionFit f = fit_dimension(count_in_boxes(x, radii));
    CHECK(f.slope > 1.75);
    CHECK(f.slope < 2.25);
}

TEST_CASE("counts are nondecreasing in the radius") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const PointSet x = oracles::random_set(rng, d, 40, rng() % 300);
        const CountSeries s = count_in_boxes(x, {2, 5, 11, 23, 40});
        for (std::size_t i = 0; i + 1 < s.counts.size(); ++i)
            CHECK(s.counts[i] <= s.counts[i + 1]);
    }
}

TEST_CASE("generator-backed counts") {
    // derived level per largest radius: counts sit in the power-law sandwich
    std::vector<std::int64_t> radii{8, 16, 32, 64};
    const CountSeries s = count_in_boxes(SetSource::xk, 2, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double j = std::log2(static_cast<double>(radii[i]));
        CHECK(static_cast<double>(s.counts[i]) >= std::pow(4.0, j));
        CHECK(static_cast<double>(s.counts[i]) <= std::pow(4.0, j + 2));
    }
    // and it agrees with the limit-set truncation
    CHECK(s.counts == count_in_boxes(SetSource::xinf, 2, radii).counts);

    // a fixed level counts that level only: all 16 level-2 points fit in
    // radius 3, and only the units in radius 1
    const CountSeries fixed = count_in_boxes(SetSource::xk, 2, {1, 3}, 2);
    CHECK(fixed.counts == std::vector<std::uint64_t>{4, 16});
}

TEST_CASE("thickened counts bounded by a (2d+1)-fold cover") {
    for (int d = 1; d <= 2; ++d) {
        std::vector<std::int64_t> radii{8, 16, 32};
        const PointSet xinf = build_xinf_box(d, radii.back() + 1);
        const PointSet xplus = build_xplus_box(d, radii.back());
        const CountSeries a = count_in_boxes(xinf, radii);
        const CountSeries b = count_in_boxes(xplus, radii);
        for (std::size_t i = 0; i < radii.size(); ++i) {
            CHECK(b.counts[i] >= a.counts[i]);
            CHECK(b.counts[i] <= (2 * static_cast<std::uint64_t>(d) + 1) * a.counts[i]);
        }
    }
}
