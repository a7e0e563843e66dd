#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "z2lat/box.hpp"
#include "z2lat/errors.hpp"
#include "z2lat/parallel.hpp"
#include "z2lat/point_set.hpp"

namespace z2lat {

// Box-local minimum-support search. Variables are the points of [-r,r]^n,
// one parity constraint per interior point (neighbor sum even), plus the pin
// u(origin) = 1. Solved by GF(2) elimination; the affine solution space is
// enumerated exhaustively for the minimum weight. Because only interior
// constraints are imposed, the result is a relaxation: every globally
// harmonic u restricted to the box is feasible here, so
// relaxed_min_weight <= the true minimum over global solutions.

struct MinSupportResult {
    int n = 0;
    std::int64_t r = 0;
    std::uint64_t weight = 0;
    PointSet witness;
    std::size_t free_bits = 0;       // dimension of the solution space
    std::size_t enumerated_bits = 0; // after fixing always-zero frees
};

namespace detail {

struct Gf2Matrix {
    std::size_t cols = 0; // variables; rhs kept separately
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<std::uint8_t> rhs;

    static std::size_t blocks_for(std::size_t cols) { return (cols + 63) / 64; }

    void add_row(const std::vector<std::size_t>& ones, bool b) {
        std::vector<std::uint64_t> row(blocks_for(cols), 0);
        for (std::size_t c : ones) row[c >> 6] ^= std::uint64_t(1) << (c & 63);
        rows.push_back(std::move(row));
        rhs.push_back(b ? 1 : 0);
    }

    bool get(std::size_t r, std::size_t c) const {
        return (rows[r][c >> 6] >> (c & 63)) & 1;
    }

    void xor_rows(std::size_t dst, std::size_t src) {
        auto& a = rows[dst];
        const auto& b = rows[src];
        for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
        rhs[dst] ^= rhs[src];
    }
};

// Reduced row echelon form; pivot columns chosen in increasing column
// (lexicographic point) order. Returns pivot column per pivot row.
inline std::vector<std::size_t> rref(Gf2Matrix& m) {
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows.size() && !m.get(sel, col)) ++sel;
        if (sel == m.rows.size()) continue;
        std::swap(m.rows[sel], m.rows[row]);
        std::swap(m.rhs[sel], m.rhs[row]);
        for (std::size_t r2 = 0; r2 < m.rows.size(); ++r2)
            if (r2 != row && m.get(r2, col)) m.xor_rows(r2, row);
        pivot_cols.push_back(col);
        ++row;
    }
    // contradiction check: zero row with rhs 1
    for (std::size_t r2 = row; r2 < m.rows.size(); ++r2) {
        bool zero = true;
        for (std::uint64_t b : m.rows[r2])
            if (b) { zero = false; break; }
        if (zero && m.rhs[r2]) throw infeasible_system("pinned parity system has no solution");
    }
    m.rows.resize(row);
    m.rhs.resize(row);
    return pivot_cols;
}

inline std::size_t box_volume_checked(int n, std::int64_t r) {
    // elimination is cubic-ish in the variable count; keep it desk-scale
    constexpr std::uint64_t kVarGuard = 8192;
    std::uint64_t side = static_cast<std::uint64_t>(2 * r + 1);
    std::uint64_t vol = 1;
    for (int i = 0; i < n; ++i) {
        if (vol > kVarGuard / side)
            throw budget_exceeded("minweight box volume above guard");
        vol *= side;
    }
    return static_cast<std::size_t>(vol);
}

} // namespace detail

/// Minimum support weight over the box-local solution space, with one
/// witness attaining it. Tie-break: smallest weight, then the witness whose
/// free-variable bit pattern is lexicographically first. `budget_bits` caps
/// the enumerated free bits (after always-zero frees are fixed).
inline MinSupportResult min_support(int n, std::int64_t r, int budget_bits = 26,
                                    int threads = 1) {
    if (n < 1) throw invalid_argument_error("dimension must be >= 1");
    if (r < 0) throw invalid_argument_error("radius must be >= 0");
    if (budget_bits < 0 || budget_bits > 62)
        throw invalid_argument_error("enumeration budget must be in [0, 62] bits");
    const std::size_t vars = detail::box_volume_checked(n, r);
    const std::int64_t side = 2 * r + 1;

    // lex index of a box point: mixed-radix over coordinate + r digits
    auto point_index = [&](const std::vector<std::int64_t>& p) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(p[i] + r);
        return idx;
    };

    detail::Gf2Matrix m;
    m.cols = vars;
    if (r >= 1) {
        // one constraint per interior point: neighbor sum even
        std::vector<std::int64_t> y(static_cast<std::size_t>(n), -(r - 1));
        for (;;) {
            std::vector<std::size_t> ones;
            ones.reserve(static_cast<std::size_t>(2 * n));
            std::vector<std::int64_t> nb = y;
            for (int i = 0; i < n; ++i) {
                for (int s : {1, -1}) {
                    nb[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] + s;
                    ones.push_back(point_index(nb));
                }
                nb[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)];
            }
            m.add_row(ones, false);
            int carry = n - 1;
            while (carry >= 0 && ++y[static_cast<std::size_t>(carry)] > r - 1)
                y[static_cast<std::size_t>(carry--)] = -(r - 1);
            if (carry < 0) break;
        }
    }
    m.add_row({point_index(std::vector<std::int64_t>(static_cast<std::size_t>(n), 0))}, true);

    const std::vector<std::size_t> pivot_cols = detail::rref(m);
    const std::size_t pivots = pivot_cols.size();

    std::vector<std::uint8_t> is_pivot(vars, 0);
    for (std::size_t c : pivot_cols) is_pivot[c] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < vars; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    // column mask over pivot rows for each free var; frees touching no pivot
    // row only ever add weight, so they are fixed to zero up front
    const std::size_t prow_blocks = (pivots + 63) / 64;
    std::vector<std::vector<std::uint64_t>> colmask;
    std::vector<std::size_t> active; // indices into free_cols
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        std::vector<std::uint64_t> mask(prow_blocks, 0);
        bool any = false;
        for (std::size_t pr = 0; pr < pivots; ++pr) {
            if (m.get(pr, free_cols[f])) {
                mask[pr >> 6] ^= std::uint64_t(1) << (pr & 63);
                any = true;
            }
        }
        if (any) {
            colmask.push_back(std::move(mask));
            active.push_back(f);
        }
    }

    const std::size_t fbits = active.size();
    if (fbits > static_cast<std::size_t>(budget_bits))
        throw budget_exceeded("solution-space enumeration needs 2^" + std::to_string(fbits) +
                              " > 2^" + std::to_string(budget_bits) +
                              " states; raise the budget to allow it");

    std::vector<std::uint64_t> base_piv(prow_blocks, 0);
    for (std::size_t pr = 0; pr < pivots; ++pr)
        if (m.rhs[pr]) base_piv[pr >> 6] |= std::uint64_t(1) << (pr & 63);

    auto popcnt = [](const std::vector<std::uint64_t>& v) {
        std::uint64_t s = 0;
        for (std::uint64_t b : v) s += static_cast<std::uint64_t>(std::popcount(b));
        return s;
    };

    struct Best {
        std::uint64_t weight = UINT64_MAX;
        std::uint64_t pattern = UINT64_MAX; // active free bits, bit i = active[i]
    };
    // lex-first pattern: treat lower active index as more significant
    auto pattern_key = [fbits](std::uint64_t pat) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < fbits; ++i)
            if ((pat >> i) & 1) key |= std::uint64_t(1) << (fbits - 1 - i);
        return key;
    };
    auto better = [&](const Best& a, const Best& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return pattern_key(a.pattern) < pattern_key(b.pattern);
    };

    const std::uint64_t total = std::uint64_t(1) << fbits;
    std::vector<Best> chunk_best(chunk_count(total, threads));
    for_chunks(static_cast<std::size_t>(total), threads,
               [&](std::size_t begin, std::size_t end, std::size_t chunk) {
                   // Gray-code walk over [begin, end): state for counter g is
                   // pattern gray(g) = g ^ (g >> 1)
                   std::uint64_t g = begin;
                   std::uint64_t pat = g ^ (g >> 1);
                   std::vector<std::uint64_t> piv = base_piv;
                   for (std::size_t i = 0; i < fbits; ++i)
                       if ((pat >> i) & 1)
                           for (std::size_t b = 0; b < prow_blocks; ++b) piv[b] ^= colmask[i][b];
                   Best best;
                   for (;;) {
                       Best cur{static_cast<std::uint64_t>(std::popcount(pat)) + popcnt(piv), pat};
                       if (better(cur, best)) best = cur;
                       if (++g >= end) break;
                       const std::uint64_t next_pat = g ^ (g >> 1);
                       const std::uint64_t flipped = next_pat ^ pat;
                       const int bit = std::countr_zero(flipped);
                       for (std::size_t b = 0; b < prow_blocks; ++b)
                           piv[b] ^= colmask[static_cast<std::size_t>(bit)][b];
                       pat = next_pat;
                   }
                   chunk_best[chunk] = best;
               });
    Best best;
    for (const Best& b : chunk_best)
        if (better(b, best)) best = b;

    // materialize the witness
    std::vector<std::uint8_t> sol(vars, 0);
    for (std::size_t i = 0; i < fbits; ++i)
        if ((best.pattern >> i) & 1) sol[free_cols[active[i]]] = 1;
    for (std::size_t pr = 0; pr < pivots; ++pr) {
        std::uint8_t v = m.rhs[pr];
        for (std::size_t i = 0; i < fbits; ++i)
            if (((best.pattern >> i) & 1) && m.get(pr, free_cols[active[i]])) v ^= 1;
        sol[pivot_cols[pr]] = v;
    }

    std::vector<std::int64_t> flat;
    std::vector<std::int64_t> p(static_cast<std::size_t>(n));
    for (std::size_t idx = 0; idx < vars; ++idx) {
        if (!sol[idx]) continue;
        std::size_t rem = idx;
        for (int i = n - 1; i >= 0; --i) {
            p[static_cast<std::size_t>(i)] =
                static_cast<std::int64_t>(rem % static_cast<std::size_t>(side)) - r;
            rem /= static_cast<std::size_t>(side);
        }
        flat.insert(flat.end(), p.begin(), p.end());
    }

    MinSupportResult out;
    out.n = n;
    out.r = r;
    out.weight = best.weight;
    out.witness = PointSet::from_flat(n, std::move(flat));
    out.free_bits = free_cols.size();
    out.enumerated_bits = fbits;
    return out;
}

/// Consistency probe, not a proof: weights are >= 1 everywhere (the pin
/// forces a nonempty support), and for n = 2 they are nondecreasing across
/// the tested radii.
inline bool lower_bound_check(int n, const std::vector<std::int64_t>& radii,
                              int budget_bits = 26, int threads = 1) {
    std::uint64_t prev = 0;
    for (std::int64_t r : radii) {
        const MinSupportResult res = min_support(n, r, budget_bits, threads);
        if (res.weight < 1) return false;
        if (n == 2 && res.weight < prev) return false;
        prev = res.weight;
    }
    return true;
}

} // namespace z2lat
