#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "catext/ring.hpp"

namespace catext {

// Dense matrix over a ring R (GF or ZZ).  Entries act on column vectors:
// entry (i, j) is the coefficient of basis vector i in the image of basis
// vector j.  Zero-row and zero-column matrices are legal everywhere.
template <class R>
struct Mat {
    using E = typename R::Elem;

    std::size_t rows = 0, cols = 0;
    std::vector<E> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    E& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const E& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = E(1);
        return m;
    }
    static Mat zero(std::size_t r, std::size_t c) { return Mat(r, c); }

    bool operator==(const Mat&) const = default;
};

template <class R>
Mat<R> from_rows(const R& ring, std::size_t rows, std::size_t cols,
                 std::initializer_list<long long> entries) {
    Mat<R> m(rows, cols);
    std::size_t k = 0;
    for (auto v : entries) m.a[k++] = ring.from_int(v);
    if (k != rows * cols) throw Error("from_rows: entry count mismatch");
    return m;
}

template <class R>
bool is_zero(const R& ring, const Mat<R>& m) {
    for (const auto& e : m.a)
        if (!ring.is_zero(e)) return false;
    return true;
}

template <class R>
Mat<R> mul(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    if (A.cols != B.rows) throw Error("mul: dimension mismatch");
    Mat<R> C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const auto& aik = A(i, k);
            if (ring.is_zero(aik)) continue;
            for (std::size_t j = 0; j < B.cols; ++j)
                C(i, j) = ring.add(C(i, j), ring.mul(aik, B(k, j)));
        }
    return C;
}

template <class R>
std::vector<typename R::Elem> mul_vec(const R& ring, const Mat<R>& A,
                                      const std::vector<typename R::Elem>& v) {
    if (A.cols != v.size()) throw Error("mul_vec: dimension mismatch");
    std::vector<typename R::Elem> w(A.rows, ring.zero());
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j)
            if (!ring.is_zero(A(i, j))) w[i] = ring.add(w[i], ring.mul(A(i, j), v[j]));
    return w;
}

template <class R>
Mat<R> add(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw Error("add: dimension mismatch");
    Mat<R> C(A.rows, A.cols);
    for (std::size_t k = 0; k < A.a.size(); ++k) C.a[k] = ring.add(A.a[k], B.a[k]);
    return C;
}

template <class R>
Mat<R> sub(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw Error("sub: dimension mismatch");
    Mat<R> C(A.rows, A.cols);
    for (std::size_t k = 0; k < A.a.size(); ++k) C.a[k] = ring.sub(A.a[k], B.a[k]);
    return C;
}

template <class R>
Mat<R> neg(const R& ring, const Mat<R>& A) {
    Mat<R> C(A.rows, A.cols);
    for (std::size_t k = 0; k < A.a.size(); ++k) C.a[k] = ring.neg(A.a[k]);
    return C;
}

template <class R>
Mat<R> transpose(const Mat<R>& A) {
    Mat<R> T(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

template <class R>
Mat<R> mat_pow(const R& ring, const Mat<R>& A, std::size_t k) {
    if (A.rows != A.cols) throw Error("mat_pow: square matrix required");
    Mat<R> P = Mat<R>::identity(A.rows);
    for (std::size_t i = 0; i < k; ++i) P = mul(ring, P, A);
    return P;
}

// Writes B into M at offset (i0, j0).
template <class R>
void set_block(Mat<R>& M, std::size_t i0, std::size_t j0, const Mat<R>& B) {
    for (std::size_t i = 0; i < B.rows; ++i)
        for (std::size_t j = 0; j < B.cols; ++j) M(i0 + i, j0 + j) = B(i, j);
}

// M[i0.., j0..] += sign * B  with sign in {+1, -1}.
template <class R>
void add_block(const R& ring, Mat<R>& M, std::size_t i0, std::size_t j0, const Mat<R>& B,
               int sign) {
    for (std::size_t i = 0; i < B.rows; ++i)
        for (std::size_t j = 0; j < B.cols; ++j) {
            const auto v = sign >= 0 ? B(i, j) : ring.neg(B(i, j));
            M(i0 + i, j0 + j) = ring.add(M(i0 + i, j0 + j), v);
        }
}

template <class R>
Mat<R> block(const Mat<R>& M, std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) {
    Mat<R> B(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) B(i, j) = M(i0 + i, j0 + j);
    return B;
}

template <class R>
Mat<R> hstack(const Mat<R>& A, const Mat<R>& B) {
    if (A.rows != B.rows) throw Error("hstack: row mismatch");
    Mat<R> C(A.rows, A.cols + B.cols);
    set_block(C, 0, 0, A);
    set_block(C, 0, A.cols, B);
    return C;
}

template <class R>
Mat<R> column(const Mat<R>& A, std::size_t j) {
    Mat<R> c(A.rows, 1);
    for (std::size_t i = 0; i < A.rows; ++i) c(i, 0) = A(i, j);
    return c;
}

template <class R>
std::vector<typename R::Elem> column_vec(const Mat<R>& A, std::size_t j) {
    std::vector<typename R::Elem> c(A.rows);
    for (std::size_t i = 0; i < A.rows; ++i) c[i] = A(i, j);
    return c;
}

// Kronecker product, (A ⊗ B)((i1,i2),(j1,j2)) = A(i1,j1)·B(i2,j2).
template <class R>
Mat<R> kron(const R& ring, const Mat<R>& A, const Mat<R>& B) {
    Mat<R> K(A.rows * B.rows, A.cols * B.cols);
    for (std::size_t i1 = 0; i1 < A.rows; ++i1)
        for (std::size_t j1 = 0; j1 < A.cols; ++j1) {
            if (ring.is_zero(A(i1, j1))) continue;
            for (std::size_t i2 = 0; i2 < B.rows; ++i2)
                for (std::size_t j2 = 0; j2 < B.cols; ++j2)
                    K(i1 * B.rows + i2, j1 * B.cols + j2) = ring.mul(A(i1, j1), B(i2, j2));
        }
    return K;
}

using FMat = Mat<GF>;
using IMat = Mat<ZZ>;

} // namespace catext
