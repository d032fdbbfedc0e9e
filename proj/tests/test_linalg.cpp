#include <catch2/catch_amalgamated.hpp>

#include "catext/linalg.hpp"
#include "catext/rng.hpp"
#include "catext/smith.hpp"

using namespace catext;

namespace {

Mat<GF> random_gf_mat(Rng& rng, const GF& f, std::size_t r, std::size_t c) {
    Mat<GF> m(r, c);
    for (auto& e : m.a) e = GF::Elem(rng.below(f.p));
    return m;
}

Mat<ZZ> random_z_mat(Rng& rng, std::size_t r, std::size_t c, long long lo, long long hi) {
    Mat<ZZ> m(r, c);
    for (auto& e : m.a) e = Int(rng.int_in(lo, hi));
    return m;
}

// Unimodular by construction: product of random shears and swaps.
Mat<ZZ> random_unimodular(Rng& rng, std::size_t n, int ops) {
    Mat<ZZ> U = Mat<ZZ>::identity(n);
    for (int k = 0; k < ops && n > 1; ++k) {
        std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        const Int q(rng.int_in(-2, 2));
        for (std::size_t c = 0; c < n; ++c) U(i, c) += q * U(j, c);
    }
    return U;
}

} // namespace

TEST_CASE("rank and kernel on trivial matrices") {
    const GF f5(5);
    const Mat<GF> zero33(3, 3);
    CHECK(rank(f5, zero33) == 0);
    CHECK(kernel(f5, zero33) == Mat<GF>::identity(3));

    const Mat<GF> id4 = Mat<GF>::identity(4);
    CHECK(rank(f5, id4) == 4);
    CHECK(kernel(f5, id4).cols == 0);
    CHECK(image(f5, id4) == id4);
}

TEST_CASE("integer kernel of [[2,-3]]") {
    const ZZ z;
    const auto A = from_rows(z, 1, 2, {2, -3});
    const Mat<ZZ> K = z_kernel(A);
    REQUIRE(K.cols == 1);
    // generated by (3,2) up to sign
    const Int a = K(0, 0), b = K(1, 0);
    CHECK(abs(a) == 3);
    CHECK(abs(b) == 2);
    CHECK(a * 2 == b * 3);
}

TEST_CASE("smith normal form examples") {
    const ZZ z;
    SECTION("diag(2,3) -> diag(1,6)") {
        const auto A = from_rows(z, 2, 2, {2, 0, 0, 3});
        const Snf s = smith_normal_form(A);
        REQUIRE(s.rank == 2);
        CHECK(s.D(0, 0) == 1);
        CHECK(s.D(1, 1) == 6);
    }
    SECTION("identity is fixed") {
        const auto I = Mat<ZZ>::identity(3);
        const Snf s = smith_normal_form(I);
        CHECK(s.D == I);
    }
    SECTION("cokernel of (x,y) -> 2x-2y is Z/2") {
        const auto A = from_rows(z, 1, 2, {2, -2});
        const FGAbelianGroup g = z_cokernel(A);
        CHECK(g.rank == 0);
        REQUIRE(g.torsion.size() == 1);
        CHECK(g.torsion[0] == 2);
    }
}

TEST_CASE("integer homology examples") {
    const ZZ z;
    SECTION("zero differentials give a free group") {
        const Mat<ZZ> d_in(3, 0), d_out(0, 3);
        const FGAbelianGroup h = homology_at(z, d_in, d_out);
        CHECK(h.rank == 3);
        CHECK(h.torsion.empty());
    }
    SECTION("multiplication by 2 gives Z/2") {
        const auto d_in = from_rows(z, 1, 1, {2});
        const Mat<ZZ> d_out(0, 1);
        const FGAbelianGroup h = homology_at(z, d_in, d_out);
        CHECK(h.rank == 0);
        REQUIRE(h.torsion.size() == 1);
        CHECK(h.torsion[0] == 2);
    }
    SECTION("an exact pair has trivial homology") {
        // d_out: projection Z^2 -> Z onto the first coordinate,
        // d_in: inclusion of its kernel
        const auto d_out = from_rows(z, 1, 2, {1, 0});
        const auto d_in = from_rows(z, 2, 1, {0, 1});
        const FGAbelianGroup h = homology_at(z, d_in, d_out);
        CHECK(h.is_trivial());
    }
    SECTION("nonzero composites are rejected") {
        const auto d_in = from_rows(z, 1, 1, {1});
        const auto d_out = from_rows(z, 1, 1, {1});
        CHECK_THROWS_AS(homology_at(z, d_in, d_out), CompositionNonzero);
    }
}

TEST_CASE("rank-nullity and transpose rank on random field matrices") {
    Rng rng(12345);
    for (std::uint32_t p : {2u, 5u, 7u}) {
        const GF f(p);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t r = rng.below(6), c = rng.below(6);
            const Mat<GF> m = random_gf_mat(rng, f, r, c);
            const std::size_t rk = rank(f, m);
            CHECK(rk == rank(f, transpose(m)));
            CHECK(rk + kernel(f, m).cols == c);
            CHECK(is_zero(f, mul(f, m, kernel(f, m))));
            CHECK(rank(f, image(f, m)) == rk);
        }
    }
}

TEST_CASE("snf transforms are unimodular and invariant under unimodular moves") {
    Rng rng(777);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
        const Mat<ZZ> A = random_z_mat(rng, r, c, -4, 4);
        const Snf s = smith_normal_form(A);
        CHECK(abs(z_det(s.U)) == 1);
        CHECK(abs(z_det(s.V)) == 1);
        // mangle by unimodular row/column operations; invariant factors agree
        const Mat<ZZ> L = random_unimodular(rng, r, 6);
        const Mat<ZZ> Rm = random_unimodular(rng, c, 6);
        const Snf s2 = smith_normal_form(mul(ZZ{}, mul(ZZ{}, L, A), Rm));
        REQUIRE(s2.rank == s.rank);
        for (std::size_t t = 0; t < s.rank; ++t) CHECK(s2.D(t, t) == s.D(t, t));
    }
}

TEST_CASE("field homology agrees with brute-force enumeration over F_2") {
    // Enumerate all vectors of F_2^n; |ker|/|im| determines the dimension.
    const GF f2(2);
    Rng rng(99);
    auto apply = [&](const Mat<GF>& m, unsigned mask) {
        unsigned out = 0;
        for (std::size_t i = 0; i < m.rows; ++i) {
            unsigned bit = 0;
            for (std::size_t j = 0; j < m.cols; ++j)
                if (mask >> j & 1u) bit ^= m(i, j);
            out |= (bit & 1u) << i;
        }
        return out;
    };
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + rng.below(6);
        const std::size_t a = rng.below(5), b = rng.below(5);
        const Mat<GF> d_out = random_gf_mat(rng, f2, b, n);
        // make d_in land in ker(d_out): compose a random map into the kernel
        const Mat<GF> K = kernel(f2, d_out);
        const Mat<GF> d_in = mul(f2, K, random_gf_mat(rng, f2, K.cols, a));
        std::size_t ker_count = 0;
        std::vector<bool> in_image(1u << n, false);
        for (unsigned mask = 0; mask < (1u << n); ++mask)
            if (apply(d_out, mask) == 0) ++ker_count;
        for (unsigned mask = 0; mask < (1u << a); ++mask) {
            unsigned out = 0;
            for (std::size_t i = 0; i < n; ++i) {
                unsigned bit = 0;
                for (std::size_t j = 0; j < a; ++j)
                    if (mask >> j & 1u) bit ^= d_in(i, j);
                out |= (bit & 1u) << i;
            }
            in_image[out] = true;
        }
        std::size_t im_count = 0;
        for (unsigned v = 0; v < (1u << n); ++v)
            if (in_image[v]) ++im_count;
        const std::size_t expected = [&] {
            std::size_t q = ker_count / im_count, d = 0;
            while (q > 1) {
                q /= 2;
                ++d;
            }
            return d;
        }();
        CHECK(homology_at(f2, d_in, d_out).dim == expected);
    }
}

TEST_CASE("subquotient classify and representatives") {
    const GF f3(3);
    // Z = span(e1, e2, e3) inside F_3^4, B = span(e1 + e2)
    Mat<GF> Z(4, 3);
    Z(0, 0) = 1;
    Z(1, 1) = 1;
    Z(2, 2) = 1;
    Mat<GF> B(4, 1);
    B(0, 0) = 1;
    B(1, 0) = 1;
    const Subquotient sq(f3, Z, B);
    REQUIRE(sq.dim == 2);
    // e1 and e1+e2 differ by an element of B
    const auto c1 = sq.classify(f3, {1, 0, 0, 0});
    const auto c2 = sq.classify(f3, {0, 2, 0, 0});
    CHECK(c1 == c2);
    const auto c3 = sq.classify(f3, {0, 0, 1, 0});
    CHECK(c3 != c1);
    CHECK_THROWS(sq.classify(f3, {0, 0, 0, 1}));
}

TEST_CASE("solve returns the first solution deterministically") {
    const GF f5(5);
    const auto A = from_rows(f5, 1, 3, {1, 1, 0});
    const auto x = solve(f5, A, {3});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 3); // free variables pinned to zero
    CHECK((*x)[1] == 0);
    CHECK((*x)[2] == 0);
    const auto none = solve(f5, from_rows(f5, 1, 1, {0}), {1});
    CHECK_FALSE(none.has_value());
}
