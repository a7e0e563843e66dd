#include <catch2/catch_amalgamated.hpp>

#include <z2lat/z2lat.hpp>

#include "oracles.hpp"

using namespace z2lat;

TEST_CASE("one-dimensional minimum supports") {
    SECTION("r = 0: pin only") {
        const auto res = min_support(1, 0);
        CHECK(res.weight == 1);
        CHECK(res.witness == PointSet::single(Point{0}));
    }
    SECTION("r = 2: evens forced, odds free") {
        const auto res = min_support(1, 2);
        CHECK(res.weight == 3);
        CHECK(res.witness == PointSet::from_points(1, {Point{-2}, Point{0}, Point{2}}));
    }
}

TEST_CASE("two-dimensional small boxes") {
    const auto r1 = min_support(2, 1);
    CHECK(r1.weight == 1);
    CHECK(r1.witness == PointSet::single(Point{0, 0}));
}

TEST_CASE("weights match the exhaustive assignment oracle") {
    for (auto [n, r] : {std::pair<int, std::int64_t>{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        const auto fast = min_support(n, r);
        const auto dumb = oracles::dumb_min_support(n, r);
        INFO("n=" << n << " r=" << r);
        CHECK(fast.weight == dumb.weight);
    }
}

TEST_CASE("witness satisfies its own parity system") {
    for (auto [n, r] : {std::pair<int, std::int64_t>{1, 3}, {2, 2}, {2, 3}, {3, 1}}) {
        const auto res = min_support(n, r);
        CHECK(res.witness.contains(Point::origin(n)));
        CHECK(static_cast<std::uint64_t>(res.witness.size()) == res.weight);
        if (r >= 1)
            CHECK(harmonic_violations(res.witness, Box::centered(n, r)).clean());
    }
}

TEST_CASE("weights nondecreasing in the radius") {
    std::uint64_t prev = 0;
    for (std::int64_t r = 0; r <= 3; ++r) {
        const auto res = min_support(2, r);
        CHECK(res.weight >= prev);
        prev = res.weight;
    }
}

TEST_CASE("diagonal certificate bounds the weight by 2r+1") {
    for (std::int64_t r = 0; r <= 3; ++r) {
        const auto res = min_support(2, r);
        CHECK(res.weight <= static_cast<std::uint64_t>(2 * r + 1));
        // the diagonal support restricted to the box really is feasible
        std::vector<std::int64_t> flat;
        for (std::int64_t t = -r; t <= r; ++t) {
            flat.push_back(t);
            flat.push_back(t);
        }
        const PointSet diag = PointSet::from_flat(2, std::move(flat));
        if (r >= 1) CHECK(harmonic_violations(diag, Box::centered(2, r)).clean());
    }
}

TEST_CASE("lower bound probe") {
    CHECK(lower_bound_check(1, {0, 1, 2, 3, 8}));
    CHECK(lower_bound_check(2, {1, 2, 3}));
    // the larger radius needs a raised enumeration budget
    CHECK(lower_bound_check(2, {2, 3, 4}, 28));
}

TEST_CASE("budget guard rejects before enumerating") {
    CHECK_THROWS_AS(min_support(2, 4, 26), budget_exceeded);
    CHECK_THROWS_AS(min_support(2, 40), budget_exceeded); // box volume guard
}

TEST_CASE("deterministic witness under threads") {
    const auto a = min_support(2, 3, 26, 1);
    const auto b = min_support(2, 3, 26, 8);
    CHECK(a.weight == b.weight);
    CHECK(a.witness == b.witness);
}

TEST_CASE("relaxation metadata") {
    const auto res = min_support(2, 2);
    CHECK(res.free_bits >= res.enumerated_bits);
    CHECK(res.n == 2);
    CHECK(res.r == 2);
}
