#pragma once

#include <cstdint>

#include "z2lat/errors.hpp"
#include "z2lat/point_set.hpp"

namespace z2lat {

// Sparse multivariate Laurent polynomials over GF(2). A polynomial is just
// the set of exponent vectors with coefficient 1, so the support IS a
// PointSet and addition is symmetric difference. In characteristic 2
// squaring doubles exponents, which keeps pow() to a handful of genuine
// convolutions.

struct Gf2Laurent {
    PointSet support;

    Gf2Laurent() = default;
    explicit Gf2Laurent(PointSet s) : support(std::move(s)) {}

    int dim() const { return support.dim(); }
    bool zero() const { return support.empty(); }

    bool operator==(const Gf2Laurent&) const = default;
};

inline Gf2Laurent gf2_zero(int d) { return Gf2Laurent(PointSet(d)); }

inline Gf2Laurent from_set(const PointSet& s) { return Gf2Laurent(s); }

/// The symbol of the parity Laplacian: sum of x_i + x_i^{-1}; support is the
/// 2d unit vectors.
inline Gf2Laurent laplace_symbol(int d) {
    if (d < 1) throw invalid_argument_error("dimension must be >= 1");
    return Gf2Laurent(neighbors(Point::origin(d)));
}

/// Symmetric difference of supports: P + P = 0.
inline Gf2Laurent add(const Gf2Laurent& p, const Gf2Laurent& q) {
    if (p.dim() != q.dim()) throw dimension_mismatch("gf2 add operands");
    std::vector<std::int64_t> flat(p.support.flat());
    flat.insert(flat.end(), q.support.flat().begin(), q.support.flat().end());
    detail::canonicalize_rows(flat, static_cast<std::size_t>(p.dim()),
                              detail::KeepRule::odd_multiplicity);
    return Gf2Laurent(PointSet::from_flat(p.dim(), std::move(flat)));
}

/// XOR-convolution: a sum point survives iff it arises from an odd number
/// of support pairs.
inline Gf2Laurent mul(const Gf2Laurent& p, const Gf2Laurent& q) {
    if (p.dim() != q.dim()) throw dimension_mismatch("gf2 mul operands");
    const std::size_t np = p.support.size(), nq = q.support.size();
    if (np == 0 || nq == 0) return gf2_zero(p.dim());
    constexpr std::size_t kPairGuard = 100'000'000;
    if (np > kPairGuard / nq) throw budget_exceeded("gf2 mul pair count above guard");
    const std::size_t d = static_cast<std::size_t>(p.dim());
    std::vector<std::int64_t> flat;
    flat.reserve(np * nq * d);
    for (std::size_t i = 0; i < np; ++i) {
        auto ri = p.support.row(i);
        for (std::size_t j = 0; j < nq; ++j) {
            auto rj = q.support.row(j);
            for (std::size_t t = 0; t < d; ++t)
                flat.push_back(detail::checked_add(ri[t], rj[t]));
        }
    }
    detail::canonicalize_rows(flat, d, detail::KeepRule::odd_multiplicity);
    return Gf2Laurent(PointSet::from_flat(p.dim(), std::move(flat)));
}

/// Frobenius square: exponent doubling, no convolution.
inline Gf2Laurent square(const Gf2Laurent& p) {
    if (p.zero()) return p;
    return Gf2Laurent(dilate(p.support, 2));
}

/// P^n by square-and-multiply; the squarings are exponent doublings.
inline Gf2Laurent pow(const Gf2Laurent& p, std::uint64_t n) {
    if (n < 1) throw invalid_argument_error("exponent must be >= 1");
    Gf2Laurent result = gf2_zero(p.dim());
    bool have = false;
    Gf2Laurent base = p;
    while (n) {
        if (n & 1) {
            result = have ? mul(result, base) : base;
            have = true;
        }
        n >>= 1;
        if (n) base = square(base);
    }
    return result;
}

/// mul(P_X, S): the support is exactly the set of points with an odd number
/// of neighbors in X; empty iff the characteristic function of X is
/// parity-harmonic.
inline Gf2Laurent neighbor_parity_series(const PointSet& x) {
    return mul(from_set(x), laplace_symbol(x.dim()));
}

} // namespace z2lat
