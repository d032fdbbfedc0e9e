#pragma once

#include <optional>
#include <vector>

#include "catext/matrix.hpp"

namespace catext {

// Exact Gaussian elimination over a prime field.  All routines are
// deterministic: pivots are chosen as the first nonzero entry in scan order,
// so bases depend only on the input matrix.

struct Rref {
    Mat<GF> m;                  // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column per nonzero row
};

inline Rref rref(const GF& f, Mat<GF> m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && m(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(sel, j));
        const auto piv_inv = f.inv(m(row, col));
        for (std::size_t j = col; j < m.cols; ++j) m(row, j) = f.mul(m(row, j), piv_inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m(i, col) == 0) continue;
            const auto c = m(i, col);
            for (std::size_t j = col; j < m.cols; ++j)
                m(i, j) = f.sub(m(i, j), f.mul(c, m(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const GF& f, const Mat<GF>& m) { return rref(f, m).pivots.size(); }

// Basis of the null space, one column per free variable, in free-column order.
inline Mat<GF> kernel(const GF& f, const Mat<GF>& m) {
    const Rref r = rref(f, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : r.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat<GF> K(m.cols, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t fc = free_cols[k];
        K(fc, k) = 1 % f.p;
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            K(r.pivots[i], k) = f.neg(r.m(i, fc));
    }
    return K;
}

// Basis of the column space: the pivot columns of the original matrix.
inline Mat<GF> image(const GF& f, const Mat<GF>& m) {
    const Rref r = rref(f, m);
    Mat<GF> I(m.rows, r.pivots.size());
    for (std::size_t k = 0; k < r.pivots.size(); ++k)
        for (std::size_t i = 0; i < m.rows; ++i) I(i, k) = m(i, r.pivots[k]);
    return I;
}

// First solution of A x = b (free variables set to zero), or nullopt.
inline std::optional<std::vector<GF::Elem>> solve(const GF& f, const Mat<GF>& A,
                                                  const std::vector<GF::Elem>& b) {
    if (A.rows != b.size()) throw Error("solve: dimension mismatch");
    Mat<GF> aug(A.rows, A.cols + 1);
    set_block(aug, 0, 0, A);
    for (std::size_t i = 0; i < A.rows; ++i) aug(i, A.cols) = b[i];
    const Rref r = rref(f, aug);
    std::vector<GF::Elem> x(A.cols, 0);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == A.cols) return std::nullopt; // inconsistent
        x[r.pivots[i]] = r.m(i, A.cols);
    }
    return x;
}

// Columnwise first solutions of A X = B.
inline std::optional<Mat<GF>> solve_matrix(const GF& f, const Mat<GF>& A, const Mat<GF>& B) {
    if (A.rows != B.rows) throw Error("solve_matrix: dimension mismatch");
    Mat<GF> aug(A.rows, A.cols + B.cols);
    set_block(aug, 0, 0, A);
    set_block(aug, 0, A.cols, B);
    const Rref r = rref(f, aug);
    Mat<GF> X(A.cols, B.cols);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        // an inconsistent row has its pivot inside the B block
        if (r.pivots[i] >= A.cols) return std::nullopt;
        for (std::size_t j = 0; j < B.cols; ++j) X(r.pivots[i], j) = r.m(i, A.cols + j);
    }
    return X;
}

inline Mat<GF> inverse(const GF& f, const Mat<GF>& A) {
    if (A.rows != A.cols) throw Error("inverse: square matrix required");
    auto X = solve_matrix(f, A, Mat<GF>::identity(A.rows));
    if (!X) throw Error("inverse: singular matrix");
    return *X;
}

// A subquotient Z/B of F_p^ambient with a chosen section: quotient basis
// vectors are the Z-columns listed in `section`.
struct Subquotient {
    Mat<GF> Z;                        // columns: basis of the subspace
    Mat<GF> Bcoords;                  // rref rows spanning B in Z-coordinates
    std::vector<std::size_t> b_pivots;
    std::vector<std::size_t> section; // Z-columns representing the quotient
    std::size_t dim = 0;

    Subquotient() = default;

    Subquotient(const GF& f, Mat<GF> Zbasis, const Mat<GF>& B) : Z(std::move(Zbasis)) {
        auto Y = solve_matrix(f, Z, B);
        if (!Y) throw Error("Subquotient: B is not contained in Z");
        const Rref r = rref(f, transpose(*Y));
        Bcoords = r.m;
        b_pivots = r.pivots;
        std::vector<bool> is_pivot(Z.cols, false);
        for (auto c : b_pivots) is_pivot[c] = true;
        for (std::size_t c = 0; c < Z.cols; ++c)
            if (!is_pivot[c]) section.push_back(c);
        dim = section.size();
    }

    // Coordinates of [v] in the section basis; v must lie in span(Z).
    std::vector<GF::Elem> classify(const GF& f, const std::vector<GF::Elem>& v) const {
        auto c = solve(f, Z, v);
        if (!c) throw Error("Subquotient::classify: vector outside Z");
        std::vector<GF::Elem> x = *c;
        for (std::size_t i = 0; i < b_pivots.size(); ++i) {
            const auto coef = x[b_pivots[i]];
            if (coef == 0) continue;
            for (std::size_t j = 0; j < x.size(); ++j)
                x[j] = f.sub(x[j], f.mul(coef, Bcoords(i, j)));
        }
        std::vector<GF::Elem> out(dim);
        for (std::size_t k = 0; k < dim; ++k) out[k] = x[section[k]];
        return out;
    }

    // Ambient representative of the k-th quotient basis vector.
    std::vector<GF::Elem> representative(std::size_t k) const {
        return column_vec(Z, section[k]);
    }
};

struct GfHomology {
    std::size_t dim = 0;
    Subquotient classes; // ker(d_out) / im(d_in)
};

// ker(d_out)/im(d_in) at the middle term; throws CompositionNonzero unless
// d_out ∘ d_in = 0.
inline GfHomology homology_at(const GF& f, const Mat<GF>& d_in, const Mat<GF>& d_out) {
    if (d_in.rows != d_out.cols) throw Error("homology_at: ambient dimension mismatch");
    if (!is_zero(f, mul(f, d_out, d_in)))
        throw CompositionNonzero("homology_at: d_out * d_in != 0");
    Mat<GF> Z = kernel(f, d_out);
    Mat<GF> B = image(f, d_in);
    Subquotient sq(f, std::move(Z), B);
    GfHomology h;
    h.dim = sq.dim;
    h.classes = std::move(sq);
    return h;
}

} // namespace catext
