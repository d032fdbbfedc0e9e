#include <catch2/catch_amalgamated.hpp>

#include "catext/diagram.hpp"
#include "catext/random.hpp"
#include "test_cats.hpp"

using namespace catext;

namespace {

ModDiagram arrow_diagram(const Coeff& coeff, const RModule& a, const RModule& b,
                         const Mat<GF>& f_map) {
    const FinCat c = testcats::arrow();
    ModDiagram F;
    F.coeff = coeff;
    F.ob = {a, b};
    F.map.resize(3);
    F.map[c.morphism_index("id_a")] = Mat<GF>::identity(a.dim);
    F.map[c.morphism_index("id_b")] = Mat<GF>::identity(b.dim);
    F.map[c.morphism_index("f")] = f_map;
    return F;
}

RModule k_module() { return {1, Mat<GF>(1, 1)}; }

} // namespace

TEST_CASE("check_functor accepts valid diagrams and reports corruption") {
    const Coeff coeff{3, 1};
    const FinCat c = testcats::arrow();
    SECTION("constant diagram") {
        const ModDiagram F = constant_mod_diagram(c, coeff, k_module());
        CHECK(check_functor(c, F).ok());
    }
    SECTION("zero structure map is a map") {
        const ModDiagram F = arrow_diagram(coeff, k_module(), k_module(), Mat<GF>(1, 1));
        CHECK(check_functor(c, F).ok());
    }
    SECTION("planted functoriality violation is reported at the pair") {
        const FinCat ch = testcats::chain(2);
        ModDiagram F = constant_mod_diagram(ch, coeff, k_module());
        F.map[ch.morphism_index("m02")] = from_rows(coeff.field(), 1, 1, {2});
        const auto rep = check_functor(ch, F);
        REQUIRE_FALSE(rep.ok());
        bool found = false;
        for (const auto& v : rep.violations)
            found = found || v.detail.find("'m12'") != std::string::npos;
        CHECK(found);
    }
}

TEST_CASE("restriction forgets morphism data") {
    const Coeff coeff{2, 2};
    const FinCat c = testcats::terminal();
    const ModDiagram F = constant_mod_diagram(c, coeff, free_module(coeff, 1));
    const ObFamily D = restrict_to_objects(F);
    REQUIRE(D.size() == 1);
    CHECK(D[0].dim == 2);
}

TEST_CASE("lambda on the terminal category is the identity") {
    const Coeff coeff{5, 1};
    const FinCat c = testcats::terminal();
    const LambdaDiagram L = lambda(c, coeff, {k_module()});
    CHECK(L.fun.ob[0].dim == 1);
    CHECK(L.fun.map[0] == Mat<GF>::identity(1));
    CHECK(check_functor(c, L.fun).ok());
}

TEST_CASE("lambda on the arrow category") {
    const Coeff coeff{5, 1};
    const FinCat c = testcats::arrow();
    const LambdaDiagram L = lambda(c, coeff, {k_module(), k_module()});
    const int a = c.object_index("a"), b = c.object_index("b");
    CHECK(L.fun.ob[a].dim == 1);  // only id_a lands in a
    CHECK(L.fun.ob[b].dim == 2);  // id_b and f land in b
    // morphism order is (id_a, id_b, f), so the summands at b are (id_b, f)
    REQUIRE(L.summands[b].size() == 2);
    CHECK(L.summands[b][0].arrow == c.morphism_index("id_b"));
    CHECK(L.summands[b][1].arrow == c.morphism_index("f"));
    // Λ(D)(f) embeds the id_a-summand into the f-summand
    const auto m = L.fun.map[c.morphism_index("f")];
    CHECK(m == from_rows(coeff.field(), 2, 1, {0, 1}));
    CHECK(check_functor(c, L.fun).ok());
}

TEST_CASE("lambda on the Z/2 category swaps summands") {
    const Coeff coeff{3, 1};
    const FinCat c = testcats::zmod(2);
    const LambdaDiagram L = lambda(c, coeff, {k_module()});
    CHECK(L.fun.ob[0].dim == 2);
    REQUIRE(c.morphism_index("s1") >= 0);
    const auto s = L.fun.map[c.morphism_index("s1")];
    CHECK(s == from_rows(coeff.field(), 2, 2, {0, 1, 1, 0}));
    CHECK(check_functor(c, L.fun).ok());
}

TEST_CASE("lambda output is always a valid diagram") {
    const Coeff coeff{2, 2};
    Rng rng(4242);
    for (int trial = 0; trial < 8; ++trial) {
        const FinCat c = random_category(rng, 4);
        ObFamily D;
        for (std::size_t o = 0; o < c.num_objects(); ++o)
            D.push_back(random_module(rng, coeff, 2));
        const LambdaDiagram L = lambda(c, coeff, D);
        CHECK(check_functor(c, L.fun).ok());
    }
}

TEST_CASE("counit structure") {
    const Coeff coeff{5, 1};
    SECTION("terminal category gives the identity") {
        const FinCat c = testcats::terminal();
        const ModDiagram F = constant_mod_diagram(c, coeff, k_module());
        const Counit cu = counit(c, F);
        CHECK(cu.eps[0] == Mat<GF>::identity(1));
    }
    SECTION("arrow with zero structure map") {
        const FinCat c = testcats::arrow();
        const ModDiagram F = arrow_diagram(coeff, k_module(), k_module(), Mat<GF>(1, 1));
        const Counit cu = counit(c, F);
        // summand order at b is (id_b, f): component is [id | F(f)] = [1 0]
        CHECK(cu.eps[c.object_index("b")] == from_rows(coeff.field(), 1, 2, {1, 0}));
        CHECK(rank(coeff.field(), cu.eps[c.object_index("b")]) == 1);
    }
}

TEST_CASE("counit is natural, objectwise surjective, and split by the identity summand") {
    Rng rng(77);
    for (const Coeff coeff : {Coeff{2, 1}, Coeff{2, 2}, Coeff{3, 2}}) {
        const GF f = coeff.field();
        for (int trial = 0; trial < 6; ++trial) {
            const FinCat c = random_category(rng, 4);
            const ModDiagram F = random_mod_diagram(rng, c, coeff, 2);
            REQUIRE(check_functor(c, F).ok());
            const Counit cu = counit(c, F);
            for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
                const int d0 = c.morphisms[g].dom, d1 = c.morphisms[g].cod;
                CHECK(mul(f, F.map[g], cu.eps[d0]) == mul(f, cu.eps[d1], cu.lam.fun.map[g]));
            }
            for (std::size_t o = 0; o < c.num_objects(); ++o) {
                CHECK(rank(f, cu.eps[o]) == F.ob[o].dim);
                // restriction to the identity summand is the identity of F(c)
                const std::size_t off = cu.lam.offset_of(int(o), c.identity[o]);
                const Mat<GF> blockm = block(cu.eps[o], 0, off, F.ob[o].dim, F.ob[o].dim);
                CHECK(blockm == Mat<GF>::identity(F.ob[o].dim));
            }
        }
    }
}

TEST_CASE("adjunction bijection round-trips") {
    // maps ΛD -> F correspond to families D_c -> F(c)
    Rng rng(555);
    const Coeff coeff{3, 2};
    const GF f = coeff.field();
    for (int trial = 0; trial < 6; ++trial) {
        const FinCat c = random_category(rng, 3);
        ObFamily D;
        for (std::size_t o = 0; o < c.num_objects(); ++o) D.push_back(random_module(rng, coeff, 2));
        const ModDiagram F = random_mod_diagram(rng, c, coeff, 2);
        const LambdaDiagram L = lambda(c, coeff, D);

        // start from a random R-linear family t_c : D_c -> F(c)
        std::vector<Mat<GF>> t;
        for (std::size_t o = 0; o < c.num_objects(); ++o) {
            const auto basis = hom_basis(coeff, D[o], F.ob[o]);
            Mat<GF> m(F.ob[o].dim, D[o].dim);
            for (const auto& bmat : basis) {
                const GF::Elem coefc = GF::Elem(rng.below(f.p));
                for (std::size_t kk = 0; kk < m.a.size(); ++kk)
                    m.a[kk] = f.add(m.a[kk], f.mul(coefc, bmat.a[kk]));
            }
            t.push_back(std::move(m));
        }
        // transpose across the adjunction: η_c on the u-summand is F(u)∘t_dom(u)
        std::vector<Mat<GF>> eta(c.num_objects());
        for (std::size_t o = 0; o < c.num_objects(); ++o) {
            Mat<GF> m(F.ob[o].dim, L.fun.ob[o].dim);
            for (const auto& s : L.summands[o])
                set_block(m, 0, s.offset, mul(f, F.map[s.arrow], t[s.source]));
            eta[o] = std::move(m);
        }
        // η is natural
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
            const int d0 = c.morphisms[g].dom, d1 = c.morphisms[g].cod;
            CHECK(mul(f, F.map[g], eta[d0]) == mul(f, eta[d1], L.fun.map[g]));
        }
        // and restricting η to the identity summands recovers t
        for (std::size_t o = 0; o < c.num_objects(); ++o) {
            const std::size_t off = L.offset_of(int(o), c.identity[o]);
            CHECK(block(eta[o], 0, off, F.ob[o].dim, D[o].dim) == t[o]);
        }
    }
}

TEST_CASE("hom natural system on the terminal category") {
    const Coeff coeff{5, 1};
    const FinCat c = testcats::terminal();
    const ModDiagram F = constant_mod_diagram(c, coeff, k_module());
    const NatSystem<GF> D = hom_natural_system(c, F, F);
    CHECK(D.val.dim == std::vector<std::size_t>{1});
    CHECK(D.val.map[0] == Mat<GF>::identity(1));
}

TEST_CASE("hom natural system on the arrow category with identity maps") {
    const Coeff coeff{5, 1};
    const FinCat c = testcats::arrow();
    const ModDiagram F = arrow_diagram(coeff, k_module(), k_module(), Mat<GF>::identity(1));
    const FactCat fact = factorization(c);
    const HomSystem hs = hom_system(c, fact, F, F);
    for (auto d : hs.sys.val.dim) CHECK(d == 1);
    // the action of (id_a, f): id_a -> f is the identity
    const int k = fact.find(c.morphism_index("id_a"), c.morphism_index("f"),
                            c.morphism_index("id_a"), c.morphism_index("f"));
    REQUIRE(k >= 0);
    CHECK(hs.sys.val.map[k] == Mat<GF>::identity(1));
    CHECK(check_natsys(coeff.field(), hs.sys).ok());
}

TEST_CASE("hom dimension over k[x]/(x^2): Hom(R, k) is one-dimensional") {
    const Coeff coeff{2, 2};
    const auto basis = hom_basis(coeff, free_module(coeff, 1), k_module());
    CHECK(basis.size() == 1);
}

TEST_CASE("hom natural systems are functorial on the factorization category") {
    Rng rng(31337);
    for (const Coeff coeff : {Coeff{2, 1}, Coeff{2, 2}, Coeff{5, 2}}) {
        for (int trial = 0; trial < 5; ++trial) {
            const FinCat c = random_category(rng, 3);
            const ModDiagram F = random_mod_diagram(rng, c, coeff, 2);
            const ModDiagram G = random_mod_diagram(rng, c, coeff, 2);
            const NatSystem<GF> D = hom_natural_system(c, F, G);
            CHECK(check_natsys(coeff.field(), D).ok());
        }
    }
}

TEST_CASE("vec hom system agrees with the bimodule pullback route") {
    Rng rng(90210);
    SECTION("over a prime field") {
        const GF f(3);
        for (const FinCat& c : {testcats::arrow(), testcats::cospan()}) {
            const FactCat fact = factorization(c);
            const auto F = random_vec_diagram_gf(rng, c, 3, 2);
            const auto G = random_vec_diagram_gf(rng, c, 3, 2);
            const NatSystem<GF> direct = hom_natural_system_vec(f, c, fact, F, G);
            const NatSystem<GF> viaBim = natsys_from_bimodule(c, fact, hom_bimodule(f, c, F, G));
            CHECK(direct.val.dim == viaBim.val.dim);
            CHECK(direct.val.map == viaBim.val.map);
            CHECK(check_natsys(f, direct).ok());
        }
    }
    SECTION("over the integers") {
        const ZZ z;
        const FinCat c = testcats::arrow();
        const FactCat fact = factorization(c);
        const auto F = random_vec_diagram_z(rng, c, 2);
        const auto G = random_vec_diagram_z(rng, c, 2);
        const NatSystem<ZZ> direct = hom_natural_system_vec(z, c, fact, F, G);
        const NatSystem<ZZ> viaBim = natsys_from_bimodule(c, fact, hom_bimodule(z, c, F, G));
        CHECK(direct.val.dim == viaBim.val.dim);
        CHECK(direct.val.map == viaBim.val.map);
        CHECK(check_natsys(z, direct).ok());
    }
}

TEST_CASE("generated random structures are valid") {
    Rng rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const FinCat c = random_category(rng, 4);
        CHECK(validate(c).ok());
        const FactCat fact = factorization(c);
        CHECK(validate(fact.cat).ok());
        const ModDiagram F = random_mod_diagram(rng, c, Coeff{2, 2}, 2);
        CHECK(check_functor(c, F).ok());
        const auto Dz = random_vec_diagram_z(rng, c, 2);
        CHECK(check_functor(ZZ{}, c, Dz).ok());
        const auto Ns = random_natsys_gf(rng, c, fact, 5, 2);
        CHECK(check_natsys(GF(5), Ns).ok());
        const auto Nz = random_natsys_z(rng, c, fact, 2);
        CHECK(check_natsys(ZZ{}, Nz).ok());
    }
}

TEST_CASE("posets with adjoined bottom have an initial object") {
    Rng rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        const FinCat c = random_poset(rng, 4, true);
        CHECK(validate(c).ok());
        for (std::size_t o = 0; o < c.num_objects(); ++o) {
            std::size_t count = 0;
            for (std::size_t m = 0; m < c.num_morphisms(); ++m)
                if (c.morphisms[m].dom == 0 && c.morphisms[m].cod == int(o)) ++count;
            CHECK(count == 1);
        }
    }
}
