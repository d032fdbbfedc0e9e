#pragma once

#include <optional>
#include <vector>

#include "catext/matrix.hpp"

namespace catext {

// Finitely generated abelian group in invariant-factor form:
// Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with d_1 | d_2 | ... and every d_i >= 2.
struct FGAbelianGroup {
    std::size_t rank = 0;
    std::vector<Int> torsion;

    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const FGAbelianGroup&) const = default;
};

struct Snf {
    Mat<ZZ> U, D, V; // U * A * V = D, U and V unimodular
    std::size_t rank = 0;
};

namespace detail {

inline void swap_rows(Mat<ZZ>& M, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < M.cols; ++k) std::swap(M(i, k), M(j, k));
}
inline void swap_cols(Mat<ZZ>& M, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < M.rows; ++k) std::swap(M(k, i), M(k, j));
}
// row_i -= q * row_j
inline void row_axpy(Mat<ZZ>& M, std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < M.cols; ++k) M(i, k) -= q * M(j, k);
}
inline void col_axpy(Mat<ZZ>& M, std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < M.rows; ++k) M(k, i) -= q * M(k, j);
}
inline void negate_row(Mat<ZZ>& M, std::size_t i) {
    for (std::size_t k = 0; k < M.cols; ++k) M(i, k) = -M(i, k);
}

} // namespace detail

// Fraction-free determinant (Bareiss).
inline Int z_det(Mat<ZZ> M) {
    if (M.rows != M.cols) throw Error("z_det: square matrix required");
    const std::size_t n = M.rows;
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && M(s, k) == 0) ++s;
            if (s == n) return 0;
            detail::swap_rows(M, k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                M(i, j) = t / prev; // exact by Bareiss
            }
        prev = M(k, k);
    }
    return sign > 0 ? M(n - 1, n - 1) : -M(n - 1, n - 1);
}

// Smith normal form with transforms.  Pivot selection: minimal nonzero
// absolute value in the trailing submatrix, first occurrence in row-major
// scan, so the reduction is deterministic.  U*A*V = D is checked before
// returning; |det U| = |det V| = 1 holds because only swaps, negations and
// shear operations are applied (asserted on small matrices in the tests).
inline Snf smith_normal_form(const Mat<ZZ>& A) {
    Snf s;
    s.D = A;
    s.U = Mat<ZZ>::identity(A.rows);
    s.V = Mat<ZZ>::identity(A.cols);
    Mat<ZZ>& D = s.D;
    const std::size_t n = std::min(A.rows, A.cols);

    for (std::size_t t = 0; t < n; ++t) {
        // locate minimal nonzero |entry| in D[t.., t..]
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < D.rows; ++i)
            for (std::size_t j = t; j < D.cols; ++j) {
                if (D(i, j) == 0) continue;
                Int v = abs(D(i, j));
                if (best == 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break; // trailing submatrix is zero
        if (pi != t) {
            detail::swap_rows(D, t, pi);
            detail::swap_rows(s.U, t, pi);
        }
        if (pj != t) {
            detail::swap_cols(D, t, pj);
            detail::swap_cols(s.V, t, pj);
        }

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < D.rows; ++i) {
                if (D(i, t) == 0) continue;
                Int q = D(i, t) / D(t, t);
                detail::row_axpy(D, i, t, q);
                detail::row_axpy(s.U, i, t, q);
                if (D(i, t) != 0) {
                    // remainder is smaller than the pivot; promote it
                    detail::swap_rows(D, t, i);
                    detail::swap_rows(s.U, t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < D.cols; ++j) {
                if (D(t, j) == 0) continue;
                Int q = D(t, j) / D(t, t);
                detail::col_axpy(D, j, t, q);
                detail::col_axpy(s.V, j, t, q);
                if (D(t, j) != 0) {
                    detail::swap_cols(D, t, j);
                    detail::swap_cols(s.V, t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // pivot must divide the whole trailing submatrix
            bool divides = true;
            for (std::size_t i = t + 1; i < D.rows && divides; ++i)
                for (std::size_t j = t + 1; j < D.cols && divides; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        detail::row_axpy(D, t, i, Int(-1)); // add row i to row t
                        detail::row_axpy(s.U, t, i, Int(-1));
                        divides = false;
                    }
            if (divides) break;
        }
        if (D(t, t) < 0) {
            detail::negate_row(D, t);
            detail::negate_row(s.U, t);
        }
        ++s.rank;
    }

    if (mul(ZZ{}, mul(ZZ{}, s.U, A), s.V) != s.D)
        throw InternalError("smith_normal_form: U*A*V != D");
    for (std::size_t t = 1; t < s.rank; ++t)
        if (s.D(t, t) % s.D(t - 1, t - 1) != 0)
            throw InternalError("smith_normal_form: divisibility chain broken");
    return s;
}

inline std::size_t z_rank(const Mat<ZZ>& A) { return smith_normal_form(A).rank; }

// Basis of the kernel lattice.  The trailing columns of V form a basis of a
// direct summand, so the result generates the full (saturated) kernel.
inline Mat<ZZ> z_kernel(const Mat<ZZ>& A) {
    const Snf s = smith_normal_form(A);
    Mat<ZZ> K(A.cols, A.cols - s.rank);
    for (std::size_t j = s.rank; j < A.cols; ++j)
        for (std::size_t i = 0; i < A.cols; ++i) K(i, j - s.rank) = s.V(i, j);
    return K;
}

// Integer solutions of A X = B, or nullopt if some column has none.
inline std::optional<Mat<ZZ>> z_solve_matrix(const Mat<ZZ>& A, const Mat<ZZ>& B) {
    if (A.rows != B.rows) throw Error("z_solve_matrix: dimension mismatch");
    const Snf s = smith_normal_form(A);
    const Mat<ZZ> C = mul(ZZ{}, s.U, B); // D Y = C with X = V Y
    Mat<ZZ> Y(A.cols, B.cols);
    for (std::size_t j = 0; j < B.cols; ++j) {
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i < s.rank) {
                if (C(i, j) % s.D(i, i) != 0) return std::nullopt;
                Y(i, j) = C(i, j) / s.D(i, i);
            } else if (C(i, j) != 0) {
                return std::nullopt;
            }
        }
    }
    return mul(ZZ{}, s.V, Y);
}

// Cokernel Z^ambient / im(A) as an abelian group.
inline FGAbelianGroup z_cokernel(const Mat<ZZ>& A) {
    const Snf s = smith_normal_form(A);
    FGAbelianGroup g;
    g.rank = A.rows - s.rank;
    for (std::size_t t = 0; t < s.rank; ++t)
        if (s.D(t, t) >= 2) g.torsion.push_back(s.D(t, t));
    return g;
}

// ker(d_out)/im(d_in) over the integers.
inline FGAbelianGroup homology_at(const ZZ&, const Mat<ZZ>& d_in, const Mat<ZZ>& d_out) {
    if (d_in.rows != d_out.cols) throw Error("homology_at: ambient dimension mismatch");
    if (!is_zero(ZZ{}, mul(ZZ{}, d_out, d_in)))
        throw CompositionNonzero("homology_at: d_out * d_in != 0");
    const Mat<ZZ> K = z_kernel(d_out);
    // express the boundaries in kernel coordinates; solvable since im ⊆ ker
    auto Y = z_solve_matrix(K, d_in);
    if (!Y) throw InternalError("homology_at: image escapes the kernel lattice");
    return z_cokernel(*Y);
}

} // namespace catext
