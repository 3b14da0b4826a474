#pragma once

#include <stdexcept>

#include "rootshell/rat.hpp"

namespace rootshell {

using RatMat = std::vector<RatVec>;  // row-major

// Gram matrix M M^T of a list of row vectors.
inline RatMat gram(const RatMat& rows) {
    RatMat g(rows.size(), RatVec(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = dot(rows[i], rows[j]);
    return g;
}

// Exact determinant by fraction-free elimination on a copy.
inline Rat det(RatMat m) {
    size_t n = m.size();
    for (auto& row : m)
        if (row.size() != n) throw std::invalid_argument("det: not square");
    Rat d(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return Rat(0);
        if (p != c) { std::swap(m[p], m[c]); d = -d; }
        d *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            Rat f = m[r][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

// Rank of a list of row vectors, exact Gaussian elimination.
inline size_t rank(RatMat m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c].is_zero()) continue;
            Rat f = m[i][c] / m[r][c];
            for (size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

// Solve A x = b exactly (A square nonsingular).
inline RatVec solve(RatMat a, RatVec b) {
    size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("solve: size mismatch");
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("solve: singular matrix");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            Rat f = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    RatVec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// Test whether v is in the span of the given rows -- the Gram-determinant way:
// v depends linearly on {r_1..r_k} iff det(Gram(r_1..r_k, v)) = 0, provided the
// r_i are independent.  For general rows we compare ranks instead, which is the
// same test without the independence caveat.
inline bool in_span(const RatMat& rows, const RatVec& v) {
    RatMat m = rows;
    size_t r0 = rank(m);
    m.push_back(v);
    return rank(m) == r0;
}

// Dependence test for independent rows: append v and check the Gram determinant.
inline bool linearly_dependent(const RatMat& independent_rows, const RatVec& v) {
    RatMat m = independent_rows;
    m.push_back(v);
    return det(gram(m)).is_zero();
}

// Basis of the solution space of A x = 0, where A has `dim` columns.
inline std::vector<RatVec> nullspace(RatMat a, int dim) {
    int nrows = (int)a.size(), r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < dim && r < nrows; ++c) {
        int p = -1;
        for (int i = r; i < nrows; ++i)
            if (!a[i][c].is_zero()) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        Rat lead = a[r][c];
        for (auto& x : a[r]) x = x / lead;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rat f = a[i][c];
            for (int j = 0; j < dim; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<char> is_pivot(dim, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    std::vector<RatVec> basis;
    for (int c = 0; c < dim; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(dim, Rat(0));
        v[c] = Rat(1);
        for (int i = 0; i < r; ++i) v[pivot_col[i]] = -a[i][c];
        basis.push_back(v);
    }
    return basis;
}

}  // namespace rootshell
