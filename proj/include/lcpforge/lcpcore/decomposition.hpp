#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcpforge/numberfield/embedding.hpp"
#include "lcpforge/numberfield/real_algebraic.hpp"
#include "lcpforge/numeric/realmatrix.hpp"

namespace lcpforge {

struct Block {
    std::size_t start = 0;
    std::size_t size = 1;  // 1 for a real eigenline, 2 for a complex-conjugate pair
};

// Common eigenbasis of a commuting family. Columns of basis are real
// eigenvectors, or (Re v, Im v) for complex pairs; the reference form b makes
// them orthonormal. Blocks follow the eigenvalues of the ordering matrix:
// real ones descending, then complex pairs by descending real part.
struct BlockDecomposition {
    std::size_t p = 0;
    std::vector<Block> blocks;
    RealMatrix basis;
    RealMatrix basis_inv;
    IntMatrix ordering;
    std::vector<Complex> ordering_eigenvalues;
    long precision_bits = 0;

    std::size_t count() const { return blocks.size(); }
    mpfr_prec_t prec() const { return working_prec(precision_bits); }

    // Generator action in decomposition coordinates.
    RealMatrix transform(const IntMatrix& a) const { return basis_inv * to_real(a, prec()) * basis; }
};

namespace detail {

inline void check_family(const std::vector<IntMatrix>& gens) {
    if (gens.empty()) fail(ErrorKind::InvalidInput, "empty generator list");
    const std::size_t p = gens[0].rows();
    for (const auto& g : gens)
        if (!g.square() || g.rows() != p) fail(ErrorKind::DimensionMismatch, "generators must be square of equal size");
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!commute(gens[i], gens[j]))
                fail(ErrorKind::NonCommuting, "generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
}

inline bool has_squarefree_charpoly(const IntMatrix& m) {
    RatPoly chi = to_rat(char_poly(m));
    return gcd(chi, chi.derivative()).degree() == 0;
}

// Diagonalizable over C iff the squarefree part of chi annihilates the matrix.
inline bool diagonalizable(const IntMatrix& m) {
    IntPoly sf = primitive_part(squarefree_part(to_rat(char_poly(m))));
    IntMatrix z = poly_apply(sf, m);
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j)
            if (z(i, j) != 0) return false;
    return true;
}

inline std::vector<Complex> normalize_first(std::vector<Complex> v, const Real& tiny) {
    Real scale(tiny.prec());
    for (const auto& c : v) scale = max(scale, c.modulus());
    for (const auto& c : v) {
        if (c.modulus() > tiny * scale) {
            Complex lead = c;
            for (auto& x : v) x = x / lead;
            return v;
        }
    }
    return v;
}

}  // namespace detail

// ordering: optional matrix commuting with the family, with squarefree
// characteristic polynomial, whose eigenvalues fix the block order.
inline BlockDecomposition find_block_decomposition(const std::vector<IntMatrix>& gens, long bits,
                                                   const std::optional<IntMatrix>& ordering = std::nullopt) {
    detail::check_family(gens);
    const std::size_t p = gens[0].rows();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!detail::diagonalizable(gens[i]))
            fail(ErrorKind::Defective, "generator " + std::to_string(i) + " is not diagonalizable");

    IntMatrix m;
    if (ordering) {
        for (const auto& g : gens)
            if (!commute(*ordering, g)) fail(ErrorKind::NonCommuting, "ordering matrix does not commute with the family");
        if (!detail::has_squarefree_charpoly(*ordering))
            fail(ErrorKind::IndistinctEigenbasis, "ordering matrix has a repeated eigenvalue");
        m = *ordering;
    } else {
        // Generic integer combination sum k^j A_j with distinct eigenvalues.
        bool found = false;
        for (long k = 0; k <= 64 && !found; ++k) {
            IntMatrix c(p, p, Integer(0));
            Integer w = 1;
            for (std::size_t j = 0; j < gens.size(); ++j) {
                if (k == 0 && j > 0) break;
                c = c + w * gens[j];
                w *= k;
            }
            if (detail::has_squarefree_charpoly(c)) {
                m = c;
                found = true;
            }
        }
        if (!found) fail(ErrorKind::IndistinctEigenbasis, "no combination of the generators separates the eigenspaces");
    }

    BlockDecomposition d;
    d.p = p;
    d.precision_bits = bits;
    d.ordering = m;
    const mpfr_prec_t prec = d.prec();
    RatPoly chi = to_rat(char_poly(m));
    std::vector<Complex> eigs;
    std::vector<bool> is_complex;
    for (const auto& iso : isolate_real_roots(chi)) {
        eigs.push_back({Real(refine_real_root(chi, iso, bits + 32).mid(), prec), Real(prec)});
        is_complex.push_back(false);
    }
    int pairs = (chi.degree() - static_cast<int>(eigs.size())) / 2;
    for (const auto& c : certified_complex_roots(chi, bits + 32, pairs)) {
        eigs.push_back({Real(c.re, prec), Real(c.im, prec)});
        is_complex.push_back(true);
    }

    d.basis = real_zero(p, p, prec);
    std::size_t col = 0;
    const Real tiny = Real::pow2(-static_cast<long>(bits) / 2, prec);
    for (std::size_t e = 0; e < eigs.size(); ++e) {
        std::vector<std::vector<Complex>> shifted(p, std::vector<Complex>(p, Complex{Real(prec), Real(prec)}));
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                shifted[i][j].re = Real(m(i, j), prec);
                if (i == j) shifted[i][j] = shifted[i][j] - eigs[e];
            }
        std::vector<Complex> v = detail::normalize_first(complex_kernel_vector(std::move(shifted)), tiny);
        Block b{col, is_complex[e] ? std::size_t(2) : std::size_t(1)};
        for (std::size_t i = 0; i < p; ++i) {
            d.basis(i, col) = v[i].re;
            if (is_complex[e]) d.basis(i, col + 1) = v[i].im;
        }
        col += b.size;
        d.blocks.push_back(b);
        d.ordering_eigenvalues.push_back(eigs[e]);
    }
    Interval det = interval_det(d.basis);
    if (det.contains_zero()) fail(ErrorKind::IndistinctEigenbasis, "eigenbasis not certified invertible");
    d.basis_inv = inverse(d.basis);
    return d;
}

// Lambda_k(gamma_j): rows are generators, columns blocks.
struct RatioMatrix {
    std::vector<std::vector<Real>> ratios;
    std::vector<std::vector<std::optional<RealAlgebraic>>> witnesses;

    std::size_t generators() const { return ratios.size(); }
};

struct J1Violation {
    std::size_t generator;
    std::size_t block;
};

// Checks that each generator is block diagonal in the decomposition basis and
// that each diagonal block S satisfies S^T S = r^2 I; returns the ratios r.
inline RatioMatrix check_J1(const BlockDecomposition& d, const std::vector<IntMatrix>& gens) {
    const mpfr_prec_t prec = d.prec();
    const Real tol = tolerance_for(d.precision_bits, prec);
    RatioMatrix out;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].rows() != d.p) fail(ErrorKind::DimensionMismatch, "generator size differs from decomposition");
        RealMatrix t = d.transform(gens[g]);
        Real scale = max(Real(1, prec), max_abs(t));
        std::vector<Real> row;
        for (std::size_t k = 0; k < d.count(); ++k) {
            const Block& bk = d.blocks[k];
            for (std::size_t i = bk.start; i < bk.start + bk.size; ++i)
                for (std::size_t j = 0; j < d.p; ++j) {
                    if (j >= bk.start && j < bk.start + bk.size) continue;
                    if (abs(t(i, j)) > tol * scale)
                        fail(ErrorKind::J1Violation, "generator " + std::to_string(g) + " mixes block " + std::to_string(k) + " with another block");
                }
            if (bk.size == 1) {
                row.push_back(abs(t(bk.start, bk.start)));
                continue;
            }
            const std::size_t s = bk.start;
            Real a = t(s, s), b = t(s, s + 1), c = t(s + 1, s), e = t(s + 1, s + 1);
            Real g00 = a * a + c * c, g11 = b * b + e * e, g01 = a * b + c * e;
            if (abs(g00 - g11) > tol * scale * scale || abs(g01) > tol * scale * scale)
                fail(ErrorKind::J1Violation, "generator " + std::to_string(g) + " is not a similarity on block " + std::to_string(k));
            row.push_back(sqrt(g00));
        }
        out.ratios.push_back(std::move(row));
        out.witnesses.emplace_back(d.count());
    }
    return out;
}

// True iff some generator moves the flat block by a non-isometry.
inline bool check_J2(const RatioMatrix& r, std::size_t flat_block, long bits) {
    for (const auto& row : r.ratios) {
        if (flat_block >= row.size()) fail(ErrorKind::InvalidInput, "flat block index out of range");
        const Real& v = row[flat_block];
        if (abs(v - Real(1, v.prec())) > tolerance_for(bits, v.prec())) return true;
    }
    return false;
}

}  // namespace lcpforge
