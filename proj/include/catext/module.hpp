#pragma once

#include <vector>

#include "catext/linalg.hpp"

namespace catext {

// The coefficient algebra R = F_p[x]/(x^m).  m = 1 is the field F_p.
struct Coeff {
    std::uint32_t p = 2;
    std::uint32_t m = 1;

    GF field() const { return GF(p); }
    bool operator==(const Coeff&) const = default;
};

inline void validate_coeff(const Coeff& c) {
    if (!is_prime(c.p)) throw Error("coefficient modulus " + std::to_string(c.p) + " is not prime");
    if (c.m < 1) throw Error("coefficient nilpotency must be at least 1");
}

// A finite-dimensional R-module: an F_p-space with the action of the
// generator x, a nilpotent matrix with x^m = 0.
struct RModule {
    std::size_t dim = 0;
    Mat<GF> x; // dim × dim

    bool operator==(const RModule&) const = default;
};

inline RModule zero_module() { return {0, Mat<GF>(0, 0)}; }

inline void validate_module(const Coeff& c, const RModule& a) {
    if (a.x.rows != a.dim || a.x.cols != a.dim)
        throw Error("module: action matrix has wrong shape");
    const GF f = c.field();
    if (!is_zero(f, mat_pow(f, a.x, c.m)))
        throw Error("module: x^m is nonzero");
}

// Free module R^s with generator-major basis (e_i, x e_i, ..., x^{m-1} e_i).
inline RModule free_module(const Coeff& c, std::size_t s) {
    RModule a;
    a.dim = s * c.m;
    a.x = Mat<GF>(a.dim, a.dim);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t l = 0; l + 1 < c.m; ++l) a.x(i * c.m + l + 1, i * c.m + l) = 1;
    return a;
}

// x^0 .. x^{m-1} of a module's action.
inline std::vector<Mat<GF>> x_powers(const Coeff& c, const RModule& a) {
    const GF f = c.field();
    std::vector<Mat<GF>> pw;
    pw.push_back(Mat<GF>::identity(a.dim));
    for (std::size_t l = 1; l < c.m; ++l) pw.push_back(mul(f, pw.back(), a.x));
    return pw;
}

// The R-linear map R^s -> B determined by generator images (columns of g).
inline Mat<GF> r_linear_from_generators(const Coeff& c, const RModule& b, const Mat<GF>& g) {
    if (g.rows != b.dim) throw Error("r_linear_from_generators: target dimension mismatch");
    const std::size_t s = g.cols;
    const auto pw = x_powers(c, b);
    const GF f = c.field();
    Mat<GF> out(b.dim, s * c.m);
    for (std::size_t i = 0; i < s; ++i) {
        auto col = column_vec(g, i);
        for (std::size_t l = 0; l < c.m; ++l) {
            const auto v = mul_vec(f, pw[l], col);
            for (std::size_t r = 0; r < b.dim; ++r) out(r, i * c.m + l) = v[r];
        }
    }
    return out;
}

// vec/unvec in column-major order, so vec(A φ B) = (Bᵀ ⊗ A) vec(φ).
template <class R>
std::vector<typename R::Elem> vec(const Mat<R>& m) {
    std::vector<typename R::Elem> v(m.rows * m.cols);
    for (std::size_t j = 0; j < m.cols; ++j)
        for (std::size_t i = 0; i < m.rows; ++i) v[j * m.rows + i] = m(i, j);
    return v;
}

template <class R>
Mat<R> unvec(std::size_t rows, std::size_t cols, const std::vector<typename R::Elem>& v) {
    Mat<R> m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j * rows + i];
    return m;
}

// Basis of Hom_R(A, B) = { φ : φ X_A = X_B φ }, obtained as the kernel of
// the commutant system in vec coordinates.  For m = 1 this is every matrix
// and the basis is the elementary matrices in vec order.
inline std::vector<Mat<GF>> hom_basis(const Coeff& c, const RModule& a, const RModule& b) {
    const GF f = c.field();
    const Mat<GF> lhs = kron(f, transpose(a.x), Mat<GF>::identity(b.dim));
    const Mat<GF> rhs = kron(f, Mat<GF>::identity(a.dim), b.x);
    const Mat<GF> K = kernel(f, sub(f, rhs, lhs));
    std::vector<Mat<GF>> basis;
    basis.reserve(K.cols);
    for (std::size_t k = 0; k < K.cols; ++k)
        basis.push_back(unvec<GF>(b.dim, a.dim, column_vec(K, k)));
    return basis;
}

// Coordinates of an R-linear map in a hom basis produced by hom_basis.
inline std::vector<GF::Elem> hom_coords(const GF& f, const std::vector<Mat<GF>>& basis,
                                        const Mat<GF>& phi) {
    if (basis.empty()) {
        if (!is_zero(f, phi)) throw Error("hom_coords: nonzero map, empty basis");
        return {};
    }
    Mat<GF> T(basis[0].rows * basis[0].cols, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto v = vec(basis[k]);
        for (std::size_t i = 0; i < v.size(); ++i) T(i, k) = v[i];
    }
    auto x = solve(f, T, vec(phi));
    if (!x) throw Error("hom_coords: map is not in the span of the basis");
    return *x;
}

struct SumDecomposition {
    RModule total;
    std::vector<std::size_t> offset; // per summand
};

inline SumDecomposition direct_sum(const std::vector<RModule>& parts) {
    SumDecomposition s;
    std::size_t d = 0;
    for (const auto& a : parts) {
        s.offset.push_back(d);
        d += a.dim;
    }
    s.total.dim = d;
    s.total.x = Mat<GF>(d, d);
    for (std::size_t k = 0; k < parts.size(); ++k)
        set_block(s.total.x, s.offset[k], s.offset[k], parts[k].x);
    return s;
}

} // namespace catext
