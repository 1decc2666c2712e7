#pragma once

#include <vector>

#include "lcpforge/numberfield/field.hpp"

namespace lcpforge {

struct FieldVector {
    std::vector<FieldElem> coords;
    bool multiple = false;  // kernel had dimension > 1; coords is one basis vector

    friend bool operator==(const FieldVector& a, const FieldVector& b) { return a.coords == b.coords; }
};

inline FieldVector apply(const IntMatrix& a, const FieldVector& v) {
    if (a.cols() != v.coords.size()) fail(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
    const NumberField& f = v.coords.at(0).field();
    FieldVector out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        FieldElem acc = FieldElem::from_rational(f, Rational(0));
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) acc = acc + Rational(a(i, j)) * v.coords[j];
        out.coords.push_back(acc);
    }
    return out;
}

inline FieldVector scale(const FieldElem& s, const FieldVector& v) {
    FieldVector out;
    for (const auto& c : v.coords) out.coords.push_back(s * c);
    return out;
}

// Exact kernel vector of A - lambda I over the field of lambda, normalized so
// the first nonzero coordinate is 1.
inline FieldVector eigen_solve(const IntMatrix& a, const FieldElem& lambda) {
    if (!a.square()) fail(ErrorKind::DimensionMismatch, "eigen_solve needs a square matrix");
    const NumberField& f = lambda.field();
    const std::size_t n = a.rows();
    std::vector<std::vector<FieldElem>> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            FieldElem v = FieldElem::from_rational(f, Rational(a(i, j)));
            m[i].push_back(i == j ? v - lambda : v);
        }
    // Reduced row echelon form.
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t r = row;
        while (r < n && m[r][col].is_zero()) ++r;
        if (r == n) continue;
        std::swap(m[r], m[row]);
        FieldElem inv = m[row][col].inverse();
        for (auto& v : m[row]) v = v * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            FieldElem factor = m[i][col];
            for (std::size_t j = 0; j < n; ++j) m[i][j] = m[i][j] - factor * m[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    const std::size_t rank = pivot_col.size();
    if (rank == n) fail(ErrorKind::InvalidInput, to_string(lambda) + " is not an eigenvalue");
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    FieldVector out;
    out.multiple = n - rank > 1;
    out.coords.assign(n, FieldElem::from_rational(f, Rational(0)));
    out.coords[free_col] = FieldElem::from_rational(f, Rational(1));
    for (std::size_t i = 0; i < rank; ++i) out.coords[pivot_col[i]] = -m[i][free_col];
    std::size_t lead = 0;
    while (out.coords[lead].is_zero()) ++lead;
    return scale(out.coords[lead].inverse(), out);
}

}  // namespace lcpforge
