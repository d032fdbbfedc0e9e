#include <catch2/catch_amalgamated.hpp>

#include "catext/complex.hpp"
#include "catext/random.hpp"
#include "test_cats.hpp"

using namespace catext;

namespace {

template <class R>
VecDiagram<R> constant_diagram(const R&, const FinCat& c, std::size_t d) {
    VecDiagram<R> F;
    F.dim.assign(c.num_objects(), d);
    F.map.assign(c.num_morphisms(), Mat<R>::identity(d));
    return F;
}

VecDiagram<ZZ> cospan_times2(const FinCat& c) {
    const ZZ z;
    VecDiagram<ZZ> F = constant_diagram(z, c, 1);
    F.map[c.morphism_index("a")] = from_rows(z, 1, 1, {2});
    F.map[c.morphism_index("b")] = from_rows(z, 1, 1, {2});
    return F;
}

bool groups_trivial_from(const CohomologyResult<ZZ>& r, std::size_t from) {
    for (std::size_t n = from; n < r.groups.size(); ++n)
        if (!r.groups[n].is_trivial()) return false;
    return true;
}

} // namespace

TEST_CASE("limit complex of the terminal category alternates 0, id, 0") {
    const ZZ z;
    const FinCat c = testcats::terminal();
    const Cochain<ZZ> ch = limit_complex(z, c, constant_diagram(z, c, 1), 3);
    for (std::size_t n = 0; n < ch.dim.size(); ++n) CHECK(ch.dim[n] == 1);
    CHECK(ch.d[0](0, 0) == 0);
    CHECK(ch.d[1](0, 0) == 1);
    CHECK(ch.d[2](0, 0) == 0);
    CHECK(ch.d[3](0, 0) == 1);
    const auto H = cohomology(z, ch);
    CHECK(H.groups[0] == FGAbelianGroup{1, {}});
    CHECK(groups_trivial_from(H, 1));
}

TEST_CASE("limit cohomology vanishes above zero when there is an initial object") {
    const ZZ z;
    const FinCat c = testcats::arrow();
    const auto H = limit_cohomology(z, c, constant_diagram(z, c, 1), 4);
    CHECK(H.groups[0] == FGAbelianGroup{1, {}});
    CHECK(groups_trivial_from(H, 1));
}

TEST_CASE("the doubled cospan has lim^1 = Z/2") {
    const ZZ z;
    const FinCat c = testcats::cospan();
    const auto H = limit_cohomology(z, c, cospan_times2(c), 3);
    CHECK(H.groups[0] == FGAbelianGroup{1, {}});
    REQUIRE(H.groups[1].torsion.size() == 1);
    CHECK(H.groups[1].rank == 0);
    CHECK(H.groups[1].torsion[0] == 2);
    CHECK(groups_trivial_from(H, 2));
}

TEST_CASE("H^0 of the arrow with zero structure map is Z") {
    const ZZ z;
    const FinCat c = testcats::arrow();
    VecDiagram<ZZ> F = constant_diagram(z, c, 1);
    F.map[c.morphism_index("f")] = Mat<ZZ>(1, 1); // zero
    const auto H = limit_cohomology(z, c, F, 2);
    CHECK(H.groups[0] == FGAbelianGroup{1, {}});
}

TEST_CASE("initial-object vanishing on random posets with a bottom") {
    Rng rng(2024);
    for (int trial = 0; trial < 4; ++trial) {
        const FinCat c = random_poset(rng, 3, true);
        SECTION("integer coefficients, trial " + std::to_string(trial)) {
            const auto F = random_vec_diagram_z(rng, c, 2);
            const auto H = limit_cohomology(ZZ{}, c, F, 3);
            CHECK(groups_trivial_from(H, 1));
        }
        SECTION("prime field coefficients, trial " + std::to_string(trial)) {
            const GF f(5);
            const auto F = random_vec_diagram_gf(rng, c, 5, 2);
            const auto H = limit_cohomology(f, c, F, 3);
            for (std::size_t n = 1; n < H.groups.size(); ++n) CHECK(H.groups[n] == 0);
        }
    }
}

TEST_CASE("normalized and unnormalized complexes have the same cohomology") {
    Rng rng(4096);
    for (int trial = 0; trial < 4; ++trial) {
        const FinCat c = random_category(rng, 3);
        SECTION("limit over F_3, trial " + std::to_string(trial)) {
            const GF f(3);
            const auto F = random_vec_diagram_gf(rng, c, 3, 2);
            const auto a = limit_cohomology(f, c, F, 3, false);
            const auto b = limit_cohomology(f, c, F, 3, true);
            CHECK(a.groups == b.groups);
        }
        SECTION("Baues-Wirsching over Z, trial " + std::to_string(trial)) {
            const FactCat fact = factorization(c);
            const auto D = random_natsys_z(rng, c, fact, 2);
            const auto a = bw_cohomology(ZZ{}, c, D, 3, false);
            const auto b = bw_cohomology(ZZ{}, c, D, 3, true);
            REQUIRE(a.groups.size() == b.groups.size());
            for (std::size_t n = 0; n < a.groups.size(); ++n) CHECK(a.groups[n] == b.groups[n]);
        }
    }
}

TEST_CASE("Baues-Wirsching cohomology of the point") {
    const ZZ z;
    const FinCat c = testcats::terminal();
    const FactCat fact = factorization(c);
    const auto H = bw_cohomology(z, c, constant_system<ZZ>(c, fact, 1), 3);
    CHECK(H.groups[0] == FGAbelianGroup{1, {}});
    CHECK(groups_trivial_from(H, 1));
}

TEST_CASE("the zero system has zero cohomology") {
    const GF f(2);
    const FinCat c = testcats::cospan();
    const FactCat fact = factorization(c);
    const auto H = bw_cohomology(f, c, constant_system<GF>(c, fact, 0), 3);
    for (auto g : H.groups) CHECK(g == 0);
}

TEST_CASE("Baues-Wirsching cohomology equals the derived limit over the factorization category") {
    Rng rng(11);
    SECTION("random systems over F_5 on the arrow category") {
        const GF f(5);
        const FinCat c = testcats::arrow();
        const FactCat fact = factorization(c);
        for (int trial = 0; trial < 5; ++trial) {
            const auto D = random_natsys_gf(rng, c, fact, 5, 2);
            const auto viaBW = bw_cohomology(f, c, D, 3);
            const auto viaLim = limit_cohomology(f, fact.cat, D.val, 3);
            CHECK(viaBW.groups == viaLim.groups);
        }
    }
    SECTION("random systems over Z on random categories") {
        const ZZ z;
        for (int trial = 0; trial < 4; ++trial) {
            const FinCat c = random_category(rng, 3);
            const FactCat fact = factorization(c);
            const auto D = random_natsys_z(rng, c, fact, 2);
            const auto viaBW = bw_cohomology(z, c, D, 2);
            const auto viaLim = limit_cohomology(z, fact.cat, D.val, 2);
            REQUIRE(viaBW.groups.size() == viaLim.groups.size());
            for (std::size_t n = 0; n < viaBW.groups.size(); ++n)
                CHECK(viaBW.groups[n] == viaLim.groups[n]);
        }
    }
}

TEST_CASE("Hochschild-Mitchell cohomology via the bimodule pullback") {
    Rng rng(5150);
    const GF f(3);
    const FinCat c = testcats::arrow();
    const FactCat fact = factorization(c);
    const auto F = random_vec_diagram_gf(rng, c, 3, 2);
    const auto G = random_vec_diagram_gf(rng, c, 3, 2);
    const auto viaHM = hochschild_mitchell(f, c, hom_bimodule(f, c, F, G), 3);
    const auto direct = bw_cohomology(f, c, hom_natural_system_vec(f, c, fact, F, G), 3);
    CHECK(viaHM.groups == direct.groups);
}

TEST_CASE("comma comparison on the terminal category is the identity") {
    const GF f(3);
    const FinCat c = testcats::terminal();
    const auto cmp = comma_comparison(f, c, 0, constant_diagram(f, c, 1), 2);
    for (const auto& t : cmp.T) CHECK(t == Mat<GF>::identity(t.rows));
}

TEST_CASE("comma comparison on the arrow category with random coefficients") {
    Rng rng(616);
    const GF f(3);
    const FinCat c = testcats::arrow();
    for (int trial = 0; trial < 4; ++trial) {
        const auto G = random_vec_diagram_gf(rng, c, 3, 2);
        // the constructor verifies T∘d = d∘T exactly and that T is a permutation
        const auto cmp = comma_comparison(f, c, c.object_index("a"), G, 3);
        for (std::size_t n = 0; n + 1 < cmp.T.size(); ++n) {
            CHECK(mul(f, cmp.T[n + 1], cmp.K.d[n]) == mul(f, cmp.C.d[n], cmp.T[n]));
            CHECK(rank(f, cmp.T[n]) == cmp.T[n].rows);
        }
        // consequence: the Baues-Wirsching cohomology of M vanishes above 0
        const auto H = cohomology(f, cmp.K);
        for (std::size_t n = 1; n < H.groups.size(); ++n) CHECK(H.groups[n] == 0);
    }
}

TEST_CASE("comma comparison over the integers") {
    Rng rng(23);
    const ZZ z;
    const FinCat c = testcats::cospan();
    const auto G = random_vec_diagram_z(rng, c, 2);
    const auto cmp = comma_comparison(z, c, c.object_index("u"), G, 2);
    const auto H = cohomology(z, cmp.K);
    for (std::size_t n = 1; n < H.groups.size(); ++n) CHECK(H.groups[n].is_trivial());
}

TEST_CASE("vanishing for hom systems out of free diagrams") {
    // the natural system Hom(ΛD(dom α), F(cod α)) has no higher cohomology
    Rng rng(31);
    for (const Coeff coeff : {Coeff{2, 1}, Coeff{2, 2}}) {
        const GF f = coeff.field();
        for (int trial = 0; trial < 3; ++trial) {
            const FinCat c = random_category(rng, 3);
            ObFamily D;
            for (std::size_t o = 0; o < c.num_objects(); ++o)
                D.push_back(random_module(rng, coeff, 2));
            const ModDiagram F = random_mod_diagram(rng, c, coeff, 2);
            const NatSystem<GF> sys = hom_natural_system(c, lambda(c, coeff, D).fun, F);
            const auto H = bw_cohomology(f, c, sys, 3);
            for (std::size_t n = 1; n < H.groups.size(); ++n) CHECK(H.groups[n] == 0);
        }
    }
}
