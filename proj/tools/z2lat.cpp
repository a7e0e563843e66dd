// z2lat command line: builds the fractal lattice sets, checks the set-level
// predicates, runs the GF(2) polynomial cross-checks, estimates box-counting
// dimensions, solves box-local minimum-support systems, and drives the
// supportive walks.
//
// Exit codes: 0 success (and no violations where a predicate was checked),
// 1 predicate violations found (witnesses emitted as data), 2 usage, parse,
// or budget errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <z2lat/z2lat.hpp>

namespace {

using namespace z2lat;

struct OutputTarget {
    std::string path; // empty = stdout

    template <class Fn>
    void write(Fn&& fn) const {
        if (path.empty()) {
            fn(std::cout);
            std::cout.flush();
        } else {
            std::ofstream os(path, std::ios::binary);
            if (!os) throw error("cannot open output file " + path);
            fn(os);
        }
    }
};

PointSet load_set(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw error("cannot open input file " + path);
    return read_set(is);
}

std::vector<std::int64_t> parse_radii(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw parse_error("empty radius in list");
        out.push_back(std::stoll(tok));
    }
    if (out.empty()) throw parse_error("empty radii list");
    return out;
}

std::string quote_csv(const std::string& s) { return "\"" + s + "\""; }

std::string sequence_label(const std::vector<int>& entries) {
    std::string s;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s.push_back('-');
        s += std::to_string(entries[i]);
    }
    return s;
}

// reproducibility header: full config + artifact version, on the diagnostic
// stream so data outputs stay byte-stable across thread counts
void emit_run_header(const std::string& subcommand, const std::string& config) {
    std::cerr << "# z2lat " Z2LAT_VERSION " " << subcommand;
    if (!config.empty()) std::cerr << " " << config;
    std::cerr << "\n";
}

struct GenerateArgs {
    std::string kind;
    int d = 2;
    int k = 0;
    std::int64_t radius = 0;
    std::string out;
    int threads = 1; // advisory; construction is deterministic either way
};

int run_generate(const GenerateArgs& a) {
    std::ostringstream cfg;
    cfg << a.kind << " d=" << a.d;
    PointSet result;
    if (a.kind == "xk") {
        cfg << " k=" << a.k;
        result = build_xk(a.d, a.k).points;
    } else if (a.kind == "xinf") {
        cfg << " radius=" << a.radius;
        result = build_xinf_box(a.d, a.radius);
    } else {
        cfg << " radius=" << a.radius;
        result = build_xplus_box(a.d, a.radius);
    }
    emit_run_header("generate", cfg.str());
    OutputTarget{a.out}.write([&](std::ostream& os) { write_set(os, result); });
    std::cerr << "# points=" << result.size() << "\n";
    return 0;
}

struct VerifyArgs {
    std::string predicate;
    std::string in;
    std::int64_t radius = 0;
    std::string center;
    std::string strategy = "auto";
    std::string out;
    int threads = 1;
};

int run_verify(const VerifyArgs& a) {
    const PointSet x = load_set(a.in);
    Point center = a.center.empty() ? Point::origin(x.dim()) : parse_point(a.center);
    if (center.dim() != x.dim()) throw parse_error("--center dimension differs from the input set");
    const Box region(center, a.radius);
    ScanStrategy strat = ScanStrategy::automatic;
    if (a.strategy == "dense") strat = ScanStrategy::dense;
    else if (a.strategy == "sparse") strat = ScanStrategy::sparse;
    else if (a.strategy != "auto") throw parse_error("--strategy must be auto, dense or sparse");

    ViolationReport rep;
    if (a.predicate == "harmonic") rep = harmonic_violations(x, region, strat, a.threads);
    else if (a.predicate == "cross") rep = cross_violations(x, region, strat, a.threads);
    else if (a.predicate == "supportive") rep = supportive_violations(x, region, strat, a.threads);
    else rep = harmonic2_violations(x, region, strat, a.threads);

    std::ostringstream cfg;
    cfg << a.predicate << " in=" << a.in << " radius=" << a.radius
        << " center=" << format_point(center.view()) << " strategy=" << a.strategy;
    emit_run_header("verify", cfg.str());
    OutputTarget{a.out}.write([&](std::ostream& os) { write_report(os, rep); });
    std::cerr << "# violations=" << rep.witnesses.size() << "\n";
    return rep.clean() ? 0 : 1;
}

struct PolyArgs {
    std::string action;
    int d = 2;
    int k = 0;
    std::uint64_t power = 1;
    std::string out;
    int threads = 1; // advisory
};

int run_poly(const PolyArgs& a) {
    if (a.action == "spow") {
        std::ostringstream cfg;
        cfg << "spow d=" << a.d << " power=" << a.power;
        emit_run_header("poly", cfg.str());
        const Gf2Laurent p = pow(laplace_symbol(a.d), a.power);
        OutputTarget{a.out}.write([&](std::ostream& os) { write_set(os, p.support); });
        return 0;
    }
    // check-xk: the polynomial route must reproduce the recurrence route
    std::ostringstream cfg;
    cfg << "check-xk d=" << a.d << " k=" << a.k;
    emit_run_header("poly", cfg.str());
    const PointSet via_poly =
        a.k == 0 ? PointSet::single(Point::origin(a.d))
                 : pow(laplace_symbol(a.d), (std::uint64_t(1) << a.k) - 1).support;
    const PointSet via_recurrence = build_xk(a.d, a.k).points;
    const bool match = via_poly == via_recurrence;
    std::cout << "d=" << a.d << " k=" << a.k << " points=" << via_recurrence.size()
              << " match=" << (match ? "yes" : "no") << "\n";
    return match ? 0 : 1;
}

struct DimensionArgs {
    std::string generator = "xinf";
    int d = 2;
    int k = -1;
    std::string in;
    std::string radii = "8,16,32,64,128";
    std::string out;
    int threads = 1; // advisory
};

int run_dimension(const DimensionArgs& a) {
    const std::vector<std::int64_t> radii = parse_radii(a.radii);
    std::ostringstream cfg;
    cfg << "generator=" << a.generator << " d=" << a.d << " radii=" << a.radii;
    CountSeries series;
    if (a.generator == "file") {
        if (a.in.empty()) throw parse_error("--generator file needs --in");
        cfg << " in=" << a.in;
        series = count_in_boxes(load_set(a.in), radii);
    } else {
        SetSource src;
        if (a.generator == "xk") src = SetSource::xk;
        else if (a.generator == "xinf") src = SetSource::xinf;
        else if (a.generator == "xplus") src = SetSource::xplus;
        else throw parse_error("--generator must be xk, xinf, xplus or file");
        std::optional<int> k;
        if (a.k >= 0) {
            k = a.k;
            cfg << " k=" << a.k;
        }
        series = count_in_boxes(src, a.d, radii, k);
    }
    emit_run_header("dimension", cfg.str());
    const DimensionFit fit = fit_dimension(series);
    OutputTarget{a.out}.write([&](std::ostream& os) {
        os << "radius,count\n";
        for (std::size_t i = 0; i < series.radii.size(); ++i)
            os << series.radii[i] << "," << series.counts[i] << "\n";
        char tail[96];
        std::snprintf(tail, sizeof tail, "# slope=%.6f residual=%.6f\n", fit.slope, fit.residual);
        os << tail;
    });
    return 0;
}

struct MinweightArgs {
    int n = 2;
    std::int64_t r = 1;
    int budget = 26;
    int threads = 1;
    std::string out;
};

int run_minweight(const MinweightArgs& a) {
    if (a.budget < 0 || a.budget > 32) throw parse_error("--budget must be in [0, 32] bits");
    std::ostringstream cfg;
    cfg << "n=" << a.n << " r=" << a.r << " budget=" << a.budget;
    emit_run_header("minweight", cfg.str());
    const MinSupportResult res = min_support(a.n, a.r, a.budget, a.threads);
    // box-local constraints only: this is a lower bound for the global quantity
    std::cout << "n=" << res.n << " r=" << res.r << " relaxed_min_weight=" << res.weight << "\n";
    std::cout << "# box-local relaxation: relaxed_min_weight <= N_" << res.n << "(" << res.r
              << ")\n";
    if (!a.out.empty())
        OutputTarget{a.out}.write([&](std::ostream& os) { write_set(os, res.witness); });
    else
        write_set(std::cout, res.witness);
    return 0;
}

struct WalkArgs {
    std::string action;
    int d = 2;
    int n = 3;
    int k = 1;
    std::int64_t radius = 0; // 0 = use the exact membership oracle
    std::string x;
    std::uint64_t trials = 100;
    std::int64_t rmax = 254;
    std::uint64_t budget = 1 << 20;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
};

// seeded random member of the limit set (random digit expansion)
Point random_member(std::mt19937_64& rng, int d, int max_level) {
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_level));
    Point p = Point::origin(d);
    for (int i = 0; i < k; ++i) {
        const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(2 * d));
        p = add(p, scale(unit_direction(d, m), std::int64_t(1) << i));
    }
    return p;
}

int run_walk_lemma(const WalkArgs& a) {
    std::ostringstream cfg;
    cfg << "lemma42 d=" << a.d << " trials=" << a.trials << " rmax=" << a.rmax
        << " seed=" << a.seed;
    emit_run_header("walk", cfg.str());
    const XinfMembership xi{a.d};
    std::mt19937_64 rng(a.seed);
    std::uint64_t failures = 0;
    std::ostringstream body;
    body << "trial,x,e,r,y,offset,forward\n";
    for (std::uint64_t t = 0; t < a.trials; ++t) {
        const Point x = random_member(rng, a.d, 6);
        const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(2 * a.d));
        const Point e = unit_direction(a.d, m);
        const std::int64_t r = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(a.rmax));
        const WalkStep w = walk_to_distance(xi, std::nullopt, x, e, r);
        const std::int64_t ae = dot(w.offset.view(), e.view());
        const bool ok = (w.forward == r || w.forward == r + 1) &&
                        manhattan(w.landing, add(x, scale(e, r))) <= r &&
                        (ae == 0 || ae == 1) && l1_norm(w.offset.view()) <= r;
        if (!ok) ++failures;
        body << t << "," << quote_csv(format_point(x.view())) << "," << m << "," << r << ","
             << quote_csv(format_point(w.landing.view())) << ","
             << quote_csv(format_point(w.offset.view())) << "," << w.forward << "\n";
    }
    body << "# trials=" << a.trials << " failures=" << failures << " seed=" << a.seed << "\n";
    OutputTarget{a.out}.write([&](std::ostream& os) { os << body.str(); });
    return failures == 0 ? 0 : 1;
}

int run_walk_census(const WalkArgs& a) {
    std::ostringstream cfg;
    cfg << "census d=" << a.d << " n=" << a.n << " k=" << a.k << " radius=" << a.radius
        << " budget=" << a.budget << " seed=" << a.seed;
    emit_run_header("walk", cfg.str());

    Point x = a.x.empty() ? Point::unit(a.d, 0, 1) : parse_point(a.x);
    if (x.dim() != a.d) throw parse_error("--x dimension differs from --d");

    CensusResult res;
    if (a.radius > 0) {
        const PointSet trunc = build_xinf_box(a.d, a.radius);
        if (!trunc.contains(x)) throw invalid_argument_error("--x is not in the generated set");
        res = collision_census(trunc, Box::centered(a.d, a.radius), x, a.n, a.k, a.budget,
                               a.seed, a.threads);
    } else {
        const XinfMembership xi{a.d};
        if (!xi.contains(x.view())) throw invalid_argument_error("--x is not in the limit set");
        res = collision_census(xi, std::nullopt, x, a.n, a.k, a.budget, a.seed, a.threads);
    }

    // rows sorted by endpoint, then by sequence
    std::vector<std::size_t> order(res.sequences.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t rgt) {
        if (res.endpoints[l] != res.endpoints[rgt]) return res.endpoints[l] < res.endpoints[rgt];
        return res.sequences[l] < res.sequences[rgt];
    });
    OutputTarget{a.out}.write([&](std::ostream& os) {
        os << "sequence,endpoint,psi\n";
        for (std::size_t i : order)
            os << sequence_label(res.sequences[i]) << ","
               << quote_csv(format_point(res.endpoints[i].view())) << "," << res.psis[i] << "\n";
        os << "# sequences=" << res.sequences.size() << " distinct=" << res.distinct_endpoints
           << " max_multiplicity=" << res.max_multiplicity << " seed=" << res.seed
           << " sampled=" << (res.sampled ? 1 : 0) << "\n";
    });
    std::cerr << "# opposing_start_collisions=" << res.opposing_pairs.size() << "\n";
    return res.opposing_pairs.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice fractal supports, parity predicates and walks"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "construct a set and write a set file");
    generate->require_subcommand(1);
    for (const char* kind : {"xk", "xinf", "xplus"}) {
        auto* sub = generate->add_subcommand(kind);
        sub->add_option("--d", gen.d, "ambient dimension")->required();
        if (std::string(kind) == "xk")
            sub->add_option("--k", gen.k, "recurrence level")->required();
        else
            sub->add_option("--radius", gen.radius, "box radius")->required();
        sub->add_option("--out", gen.out, "output set file (default stdout)");
        sub->add_option("--threads", gen.threads, "worker threads (advisory)");
        sub->callback([&gen, kind] { gen.kind = kind; });
    }

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "check a predicate over a box");
    verify->require_subcommand(1);
    for (const char* pred : {"harmonic", "cross", "supportive", "harmonic2"}) {
        auto* sub = verify->add_subcommand(pred);
        sub->add_option("--in", ver.in, "input set file")->required();
        sub->add_option("--radius", ver.radius, "region radius")->required();
        sub->add_option("--center", ver.center, "region center (default origin)");
        sub->add_option("--strategy", ver.strategy, "auto|dense|sparse");
        sub->add_option("--threads", ver.threads, "worker threads");
        sub->add_option("--out", ver.out, "report file (default stdout)");
        sub->callback([&ver, pred] { ver.predicate = pred; });
    }

    PolyArgs poly;
    auto* polycmd = app.add_subcommand("poly", "GF(2) polynomial engine");
    polycmd->require_subcommand(1);
    {
        auto* spow = polycmd->add_subcommand("spow", "support of the symbol power");
        spow->add_option("--d", poly.d, "ambient dimension")->required();
        spow->add_option("--power", poly.power, "exponent >= 1")->required();
        spow->add_option("--out", poly.out, "output set file (default stdout)");
        spow->add_option("--threads", poly.threads, "worker threads (advisory)");
        spow->callback([&poly] { poly.action = "spow"; });
        auto* chk = polycmd->add_subcommand("check-xk",
                                            "compare symbol power against the recurrence");
        chk->add_option("--d", poly.d, "ambient dimension")->required();
        chk->add_option("--k", poly.k, "level")->required();
        chk->add_option("--threads", poly.threads, "worker threads (advisory)");
        chk->callback([&poly] { poly.action = "check-xk"; });
    }

    DimensionArgs dim;
    auto* dimension = app.add_subcommand("dimension", "box counts and log-log slope");
    dimension->add_option("--generator", dim.generator, "xk|xinf|xplus|file");
    dimension->add_option("--d", dim.d, "ambient dimension");
    dimension->add_option("--k", dim.k, "level for --generator xk");
    dimension->add_option("--in", dim.in, "set file for --generator file");
    dimension->add_option("--radii", dim.radii, "comma-separated increasing radii");
    dimension->add_option("--out", dim.out, "CSV output (default stdout)");
    dimension->add_option("--threads", dim.threads, "worker threads (advisory)");

    MinweightArgs mw;
    auto* minweight = app.add_subcommand("minweight", "box-local minimum support");
    minweight->add_option("--n", mw.n, "ambient dimension")->required();
    minweight->add_option("--r", mw.r, "box radius")->required();
    minweight->add_option("--budget", mw.budget, "enumeration budget in bits");
    minweight->add_option("--threads", mw.threads, "worker threads");
    minweight->add_option("--out", mw.out, "witness set file (default stdout)");

    WalkArgs wk;
    auto* walk = app.add_subcommand("walk", "supportive walks");
    walk->require_subcommand(1);
    {
        auto* lem = walk->add_subcommand("lemma42", "seeded forward-walk contract trials");
        lem->add_option("--d", wk.d, "ambient dimension")->required();
        lem->add_option("--trials", wk.trials, "number of trials");
        lem->add_option("--rmax", wk.rmax, "largest walk distance");
        lem->add_option("--seed", wk.seed, "rng seed");
        lem->add_option("--out", wk.out, "CSV output (default stdout)");
        lem->add_option("--threads", wk.threads, "worker threads (advisory)");
        lem->callback([&wk] { wk.action = "lemma42"; });
        auto* cen = walk->add_subcommand("census", "endpoint collision census");
        cen->add_option("--d", wk.d, "ambient dimension")->required();
        cen->add_option("--n", wk.n, "sequence length")->required();
        cen->add_option("--k", wk.k, "separation parameter")->required();
        cen->add_option("--x", wk.x, "start point (default first unit vector)");
        cen->add_option("--radius", wk.radius, "truncation radius; 0 = exact membership");
        cen->add_option("--budget", wk.budget, "full enumeration cap / sample count");
        cen->add_option("--seed", wk.seed, "rng seed for sampling");
        cen->add_option("--threads", wk.threads, "worker threads");
        cen->add_option("--out", wk.out, "CSV output (default stdout)");
        cen->callback([&wk] { wk.action = "census"; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*generate) return run_generate(gen);
        if (*verify) return run_verify(ver);
        if (*polycmd) return run_poly(poly);
        if (*dimension) return run_dimension(dim);
        if (*minweight) return run_minweight(mw);
        if (*walk) return wk.action == "lemma42" ? run_walk_lemma(wk) : run_walk_census(wk);
    } catch (const supportiveness_breach& e) {
        std::cout << "breach=" << format_point(std::span<const std::int64_t>(e.witness.data(),
                                                                             e.witness.size()))
                  << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
