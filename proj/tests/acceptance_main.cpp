// Acceptance suite: executes every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. The CLI binary
// path must be passed as argv[1] (used by the determinism criterion).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <z2lat/z2lat.hpp>

#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace z2lat;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
        ok = body();
    } catch (const std::exception& e) {
        detail = std::string(" (exception: ") + e.what() + ")";
    }
    std::printf("%s  %2d: %s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool check(bool cond, const char* what) {
    if (!cond) std::fprintf(stderr, "      failed: %s\n", what);
    return cond;
}

PointSet pole_points(int d, std::int64_t pole) {
    std::vector<Point> pts;
    for (int i = 0; i < d; ++i)
        for (int s : {1, -1}) pts.push_back(scale(Point::unit(d, i, s), pole));
    return PointSet::from_points(d, pts);
}

// ---- criterion 10 helpers ------------------------------------------------

std::string g_cli;
fs::path g_tmp;

int run_cli(const std::string& args, const fs::path& stdout_file) {
    const std::string cmd = g_cli + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
    return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

bool identical_across_threads(const std::string& base_args, bool with_out_file) {
    const fs::path so1 = g_tmp / "run1.stdout", so2 = g_tmp / "run2.stdout";
    const fs::path f1 = g_tmp / "run1.out", f2 = g_tmp / "run2.out";
    std::string a1 = base_args, a2 = base_args;
    if (with_out_file) {
        a1 += " --out " + f1.string();
        a2 += " --out " + f2.string();
    }
    a1 += " --threads 1";
    a2 += " --threads 8";
    const int c1 = run_cli(a1, so1);
    const int c2 = run_cli(a2, so2);
    if (c1 != c2) {
        std::fprintf(stderr, "      exit codes differ for %s\n", base_args.c_str());
        return false;
    }
    if (slurp(so1).empty() && (!with_out_file || slurp(f1).empty())) {
        std::fprintf(stderr, "      no output produced for %s\n", base_args.c_str());
        return false;
    }
    if (slurp(so1) != slurp(so2)) {
        std::fprintf(stderr, "      stdout differs for %s\n", base_args.c_str());
        return false;
    }
    if (with_out_file && slurp(f1) != slurp(f2)) {
        std::fprintf(stderr, "      output file differs for %s\n", base_args.c_str());
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

bool criterion_cardinality() {
    bool ok = true;
    for (int d = 1; d <= 4; ++d) {
        for (int k = 0; k <= 5; ++k) {
            std::uint64_t expect = 1;
            for (int i = 0; i < k; ++i) expect *= static_cast<std::uint64_t>(2 * d);
            if (expect > 10'000'000) continue;
            ok &= check(build_xk(d, k).points.size() == expect, "|level k| == (2d)^k");
        }
    }
    return ok;
}

bool criterion_polynomial_oracle() {
    bool ok = true;
    for (int d = 1; d <= 3; ++d) {
        const Gf2Laurent s = laplace_symbol(d);
        for (int k = 1; k <= 5; ++k) {
            ok &= check(pow(s, (std::uint64_t(1) << k) - 1).support == build_xk(d, k).points,
                        "support(S^(2^k - 1)) == level-k set");
            ok &= check(pow(s, std::uint64_t(1) << k).support ==
                            pole_points(d, std::int64_t(1) << k),
                        "support(S^(2^k)) == {+-2^k e_i}");
        }
    }
    return ok;
}

bool criterion_odd_neighbors() {
    bool ok = true;
    for (int d = 1; d <= 3; ++d) {
        for (int k = 0; k <= 5; ++k) {
            const std::int64_t pole = std::int64_t(1) << k;
            const auto rep =
                harmonic_violations(build_xk(d, k).points, Box::centered(d, 2 * pole));
            ok &= check(rep.witnesses == pole_points(d, pole),
                        "harmonic witnesses of a level set are exactly the poles");
        }
    }
    return ok;
}

bool criterion_xinf_harmonic() {
    bool ok = true;
    const std::int64_t r = 64;
    for (int d = 1; d <= 3; ++d) {
        const auto rep = harmonic_violations(build_xinf_box(d, 2 * r), Box::centered(d, r));
        ok &= check(rep.clean(), "limit-set truncation is parity-harmonic on the safe region");
    }
    return ok;
}

bool criterion_xplus_cross() {
    bool ok = true;
    const std::int64_t r = 32;
    for (int d = 2; d <= 3; ++d) {
        const Box region = Box::centered(d, r);
        ok &= check(cross_violations(build_xplus_box(d, 2 * r), region).clean(),
                    "thickened set satisfies the cross condition");
        const PointSet xinf = build_xinf_box(d, 2 * r);
        ok &= check(supportive_violations(xinf, region).clean(), "limit set is supportive");
        ok &= check(!cross_violations(xinf, region).clean(),
                    "limit set fails the cross condition");
    }
    return ok;
}

bool criterion_decomposition_and_stabilization() {
    bool ok = true;
    for (int d = 1; d <= 3; ++d) {
        for (int k = 1; k <= 5; ++k) {
            const PointSet prev = dilate(build_xk(d, k - 1).points, 2);
            PointSet whole(d);
            std::size_t total = 0;
            std::vector<PointSet> parts;
            for (int i = 0; i < d; ++i)
                for (int s : {1, -1}) parts.push_back(translate(prev, Point::unit(d, i, s).view()));
            for (const auto& p : parts) {
                total += p.size();
                whole = set_union(whole, p);
            }
            ok &= check(total == whole.size(), "translates are pairwise disjoint");
            ok &= check(whole == build_xk(d, k).points, "translates union to the level set");
        }
        for (std::int64_t r : {1, 3, 8, 16}) {
            const int k0 = xinf_truncation_level(r);
            const Box box = Box::centered(d, r);
            const PointSet base = clip(build_xk(d, k0).points, box);
            ok &= check(clip(build_xk(d, k0 + 1).points, box) == base,
                        "one extra level adds nothing in the box");
            ok &= check(clip(build_xk(d, k0 + 2).points, box) == base,
                        "two extra levels add nothing in the box");
        }
    }
    return ok;
}

bool criterion_dimension_fits() {
    bool ok = true;
    for (int d = 1; d <= 3; ++d) {
        std::vector<std::int64_t> radii;
        const int jmax = d <= 2 ? 10 : 7;
        for (int j = 3; j <= jmax; ++j) radii.push_back(std::int64_t(1) << j);
        const PointSet x = build_xinf_box(d, radii.back());
        const DimensionFit fit = fit_dimension(count_in_boxes(x, radii));
        const double target = std::log2(2.0 * d);
        std::fprintf(stderr, "      d=%d slope=%.4f target=%.4f\n", d, fit.slope, target);
        ok &= check(std::abs(fit.slope - target) <= 0.25, "slope within 0.25 of log2(2d)");
    }
    return ok;
}

bool criterion_minweight() {
    bool ok = true;
    for (auto [n, r] : {std::pair<int, std::int64_t>{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        const auto fast = min_support(n, r);
        const auto dumb = oracles::dumb_min_support(n, r);
        ok &= check(fast.weight == dumb.weight, "elimination weight equals exhaustive weight");
        ok &= check(static_cast<std::uint64_t>(fast.witness.size()) == fast.weight,
                    "witness cardinality equals the weight");
        if (r >= 1)
            ok &= check(harmonic_violations(fast.witness, Box::centered(n, r)).clean(),
                        "witness satisfies the interior parity constraints");
    }
    std::uint64_t prev = 0;
    for (std::int64_t r = 0; r <= 3; ++r) {
        const auto res = min_support(2, r);
        ok &= check(res.weight >= prev, "n=2 weights nondecreasing in r");
        ok &= check(res.weight <= static_cast<std::uint64_t>(2 * r + 1),
                    "n=2 weight bounded by the diagonal certificate");
        prev = res.weight;
    }
    return ok;
}

bool criterion_walks() {
    bool ok = true;
    std::mt19937_64 rng(20240801);
    // one batch of seeded (x, e, r) trials against a given walkable set
    auto trial_batch = [&](int d, const auto& set, const std::optional<Box>& region,
                           std::int64_t rmax) {
        bool batch_ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            const int k = 1 + static_cast<int>(rng() % 6);
            Point x = Point::origin(d);
            for (int i = 0; i < k; ++i) {
                const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(2 * d));
                x = add(x, scale(unit_direction(d, m), std::int64_t(1) << i));
            }
            const Point e = unit_direction(d, 1 + static_cast<int>(rng() % (2 * d)));
            const std::int64_t r =
                1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(rmax));
            const WalkStep w = walk_to_distance(set, region, x, e, r);
            const std::int64_t ae = dot(w.offset.view(), e.view());
            batch_ok &= check(w.forward == r || w.forward == r + 1,
                              "forward component in {r, r+1}");
            batch_ok &= check(manhattan(w.landing, add(x, scale(e, r))) <= r, "l1 distance bound");
            batch_ok &= check(ae == 0 || ae == 1, "residual forward part in {0,1}");
            batch_ok &= check(l1_norm(w.offset.view()) <= r, "residual l1 bound");
            if (!batch_ok) break;
        }
        return batch_ok;
    };
    // truncations sized so the region covers 3r around every start point;
    // r_6 = 254 everywhere except the d=3 truncation, where that truncation
    // does not fit desk memory and the exact membership test takes over
    for (int d = 1; d <= 2; ++d) {
        const std::int64_t big = 63 + 3 * 254 + 3;
        ok &= trial_batch(d, build_xinf_box(d, big), Box::centered(d, big), 254);
    }
    ok &= trial_batch(3, build_xinf_box(3, 200), Box::centered(3, 200), 45);
    ok &= trial_batch(3, XinfMembership{3}, std::nullopt, 254);
    // full census: truncated limit set, d=2, n=3, k=1
    const PointSet xinf = build_xinf_box(2, 512);
    const CensusResult res = collision_census(xinf, Box::centered(2, 512), Point{1, 0}, 3, 1,
                                              1 << 20, 1, 2);
    ok &= check(!res.sampled && res.sequences.size() == 64, "census enumerated all 64 sequences");
    ok &= check(res.opposing_pairs.empty(), "no opposing-start collisions");
    for (const CollisionClass& cls : res.collisions) {
        std::map<int, std::int64_t> psi_by_start;
        for (std::size_t idx : cls.members) psi_by_start[res.sequences[idx][0]] = res.psis[idx];
        if (psi_by_start.size() < 2) continue;
        std::int64_t total = 0;
        for (auto& [s, psi] : psi_by_start) total += std::abs(psi);
        ok &= check(total <= 4 * walk_radius(3), "sum |psi| over distinct starts <= 4 r_n");
    }
    return ok;
}

bool criterion_determinism() {
    bool ok = true;
    const fs::path in_set = g_tmp / "det_in.pts";
    {
        std::ofstream os(in_set);
        write_set(os, build_xk(2, 3).points);
    }
    ok &= identical_across_threads("generate xk --d 2 --k 5", true);
    ok &= identical_across_threads("generate xinf --d 2 --radius 100", true);
    ok &= identical_across_threads("generate xplus --d 3 --radius 24", true);
    ok &= identical_across_threads(
        "verify harmonic --in " + in_set.string() + " --radius 12 --strategy dense", true);
    ok &= identical_across_threads(
        "verify supportive --in " + in_set.string() + " --radius 10", true);
    ok &= identical_across_threads("poly spow --d 2 --power 31", true);
    ok &= identical_across_threads("dimension --generator xinf --d 2 --radii 8,16,32,64", true);
    ok &= identical_across_threads("minweight --n 2 --r 3", true);
    ok &= identical_across_threads("walk census --d 2 --n 3 --k 1 --radius 300 --seed 5", true);
    ok &= identical_across_threads("walk lemma42 --d 2 --trials 40 --rmax 100 --seed 9", true);
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-z2lat-cli>\n");
        return 2;
    }
    g_cli = argv[1];
    g_tmp = fs::temp_directory_path() / "z2lat_acceptance";
    fs::create_directories(g_tmp);

    criterion(1, "level cardinality (2d)^k, d<=4, k<=5", criterion_cardinality);
    criterion(2, "polynomial oracle equals recurrence, d<=3, k<=5", criterion_polynomial_oracle);
    criterion(3, "odd-neighbor poles of level sets, d<=3, k<=5", criterion_odd_neighbors);
    criterion(4, "limit-set truncation harmonic, d<=3, r=64", criterion_xinf_harmonic);
    criterion(5, "thickened set cross-clean, limit set supportive-only, r=32",
              criterion_xplus_cross);
    criterion(6, "disjoint decomposition and truncation stability",
              criterion_decomposition_and_stabilization);
    criterion(7, "dimension slopes within 0.25 of log2(2d)", criterion_dimension_fits);
    criterion(8, "minimum weights match the exhaustive oracle", criterion_minweight);
    criterion(9, "walk contracts and collision census", criterion_walks);
    criterion(10, "byte-identical outputs across thread counts", criterion_determinism);

    std::error_code ec;
    fs::remove_all(g_tmp, ec);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
