#pragma once

#include <vector>

#include "catext/diagram.hpp"
#include "catext/rng.hpp"
#include "catext/smith.hpp"

namespace catext {

// Seeded generators for property suites.  Categories are drawn from classes
// where associativity holds by construction (finite posets, small verified
// monoid tables); rejection-sampling arbitrary composition tables essentially
// never yields a category.

inline FinCat random_poset(Rng& rng, std::size_t max_objects, bool adjoin_bottom = false) {
    const std::size_t n = 2 + rng.below(max_objects > 2 ? max_objects - 1 : 1);
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.chance(1, 2)) rel[i][j] = true;
    for (std::size_t k = 0; k < n; ++k) // transitive closure
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rel[i][k] && rel[k][j]) rel[i][j] = true;

    FinCatBuilder b;
    const std::size_t base = adjoin_bottom ? 1 : 0;
    if (adjoin_bottom) b.add_object("bot");
    for (std::size_t i = 0; i < n; ++i) b.add_object("o" + std::to_string(i));
    std::vector<std::vector<int>> m(n + base, std::vector<int>(n + base, -1));
    for (std::size_t i = 0; i < n + base; ++i)
        m[i][i] = b.add_identity("id" + std::to_string(i), int(i));
    if (adjoin_bottom)
        for (std::size_t j = 0; j < n; ++j)
            m[0][j + 1] = b.add_morphism("b" + std::to_string(j), 0, int(j + 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && rel[i][j])
                m[i + base][j + base] =
                    b.add_morphism("m" + std::to_string(i) + "_" + std::to_string(j),
                                   int(i + base), int(j + base));
    for (std::size_t i = 0; i < n + base; ++i)
        for (std::size_t j = 0; j < n + base; ++j)
            for (std::size_t k = 0; k < n + base; ++k)
                if (m[i][j] >= 0 && m[j][k] >= 0 && m[i][k] >= 0)
                    b.set_composite(m[j][k], m[i][j], m[i][k]);
    return b.finalize();
}

// One-object categories from verified tables: Z/2, Z/3, and the two-element
// idempotent monoid {1, t | t² = t}.
inline FinCat random_monoid(Rng& rng) {
    FinCatBuilder b;
    const int s = b.add_object("*");
    switch (rng.below(3)) {
    case 0: {
        const int e = b.add_identity("e", s);
        const int t = b.add_morphism("s", s, s);
        b.set_composite(t, t, e);
        break;
    }
    case 1: {
        const int e = b.add_identity("e", s);
        const int a = b.add_morphism("a", s, s);
        const int c = b.add_morphism("a2", s, s);
        b.set_composite(a, a, c);
        b.set_composite(a, c, e);
        b.set_composite(c, a, e);
        b.set_composite(c, c, a);
        break;
    }
    default: {
        b.add_identity("e", s);
        const int t = b.add_morphism("t", s, s);
        b.set_composite(t, t, t);
        break;
    }
    }
    return b.finalize();
}

inline FinCat random_category(Rng& rng, std::size_t max_objects, bool allow_monoid = true) {
    if (allow_monoid && rng.chance(1, 4)) return random_monoid(rng);
    return random_poset(rng, max_objects);
}

inline Mat<GF> random_gf_matrix(Rng& rng, const GF& f, std::size_t r, std::size_t c) {
    Mat<GF> m(r, c);
    for (auto& e : m.a) e = GF::Elem(rng.below(f.p));
    return m;
}

inline Mat<GF> random_invertible(Rng& rng, const GF& f, std::size_t n) {
    Mat<GF> m = Mat<GF>::identity(n);
    for (std::size_t k = 0; k < 3 * n; ++k) {
        const std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        const GF::Elem c = GF::Elem(rng.below(f.p));
        for (std::size_t t = 0; t < n; ++t) m(i, t) = f.add(m(i, t), f.mul(c, m(j, t)));
    }
    // a random row permutation keeps pivots unpredictable
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t j = i + rng.below(n - i);
        if (i != j)
            for (std::size_t t = 0; t < n; ++t) std::swap(m(i, t), m(j, t));
    }
    return m;
}

inline Mat<ZZ> random_unimodular_z(Rng& rng, std::size_t n) {
    Mat<ZZ> m = Mat<ZZ>::identity(n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
        const std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        const Int q(rng.int_in(-1, 1));
        for (std::size_t t = 0; t < n; ++t) m(i, t) += q * m(j, t);
    }
    return m;
}

// A module with randomly conjugated canonical nilpotent action; Jordan block
// sizes are at most m so x^m = 0 holds exactly.
inline RModule random_module(Rng& rng, const Coeff& coeff, std::size_t maxdim) {
    const std::size_t d = 1 + rng.below(maxdim);
    RModule a;
    a.dim = d;
    a.x = Mat<GF>(d, d);
    std::size_t at = 0;
    while (at < d) {
        const std::size_t part = 1 + rng.below(std::min<std::size_t>(coeff.m, d - at));
        for (std::size_t l = 0; l + 1 < part; ++l) a.x(at + l + 1, at + l) = 1;
        at += part;
    }
    const GF f = coeff.field();
    const Mat<GF> b = random_invertible(rng, f, d);
    a.x = mul(f, mul(f, b, a.x), inverse(f, b));
    return a;
}

namespace detail {

// hom(a, b) nonempty, including a = b.
inline std::vector<std::size_t> reach_counts(const FinCat& c) {
    std::vector<std::size_t> cnt(c.num_objects(), 0);
    for (std::size_t b = 0; b < c.num_objects(); ++b) {
        std::vector<bool> seen(c.num_objects(), false);
        for (std::size_t f = 0; f < c.num_morphisms(); ++f)
            if (c.morphisms[f].cod == int(b)) seen[c.morphisms[f].dom] = true;
        for (std::size_t a = 0; a < c.num_objects(); ++a)
            if (seen[a]) ++cnt[b];
    }
    return cnt;
}

} // namespace detail

// Transport a diagram along a per-object change of basis.
inline ModDiagram conjugate_with(const ModDiagram& F, const FinCat& c,
                                 const std::vector<Mat<GF>>& b) {
    const GF f = F.coeff.field();
    ModDiagram out = F;
    std::vector<Mat<GF>> binv;
    for (const auto& m : b) binv.push_back(inverse(f, m));
    for (std::size_t o = 0; o < F.ob.size(); ++o)
        out.ob[o].x = mul(f, mul(f, b[o], F.ob[o].x), binv[o]);
    for (std::size_t g = 0; g < c.num_morphisms(); ++g)
        out.map[g] = mul(f, mul(f, b[c.morphisms[g].cod], F.map[g]), binv[c.morphisms[g].dom]);
    return out;
}

inline ModDiagram random_mod_diagram(Rng& rng, const FinCat& c, const Coeff& coeff,
                                     std::size_t maxdim, int depth = 0) {
    const GF f = coeff.field();
    const std::size_t cls = rng.below(depth > 0 ? 4 : 6);
    switch (cls) {
    case 0: { // constant diagram, conjugated objectwise
        const RModule a = random_module(rng, coeff, maxdim);
        std::vector<Mat<GF>> b;
        for (std::size_t o = 0; o < c.num_objects(); ++o)
            b.push_back(random_invertible(rng, f, a.dim));
        return conjugate_with(constant_mod_diagram(c, coeff, a), c, b);
    }
    case 1: { // free diagram Λ(D)
        ObFamily D;
        for (std::size_t o = 0; o < c.num_objects(); ++o)
            D.push_back(random_module(rng, coeff, maxdim));
        return lambda(c, coeff, D).fun;
    }
    case 2: { // monotone flag with trivial x-action
        const auto cnt = detail::reach_counts(c);
        ModDiagram F;
        F.coeff = coeff;
        for (std::size_t o = 0; o < c.num_objects(); ++o) {
            const std::size_t d = std::min<std::size_t>(maxdim, cnt[o]);
            F.ob.push_back({d, Mat<GF>(d, d)});
        }
        F.map.resize(c.num_morphisms());
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
            const std::size_t dd = F.ob[c.morphisms[g].dom].dim;
            const std::size_t dc = F.ob[c.morphisms[g].cod].dim;
            Mat<GF> m(dc, dd);
            for (std::size_t i = 0; i < std::min(dd, dc); ++i) m(i, i) = 1;
            F.map[g] = std::move(m);
        }
        return F;
    }
    case 3: { // co-flag: quotients along the same monotone rank
        const auto cnt = detail::reach_counts(c);
        std::size_t dmax = 0;
        for (auto v : cnt) dmax = std::max(dmax, std::min<std::size_t>(maxdim, v));
        const std::size_t amb = dmax + rng.below(2);
        ModDiagram F;
        F.coeff = coeff;
        for (std::size_t o = 0; o < c.num_objects(); ++o) {
            const std::size_t j = std::min<std::size_t>(std::min<std::size_t>(maxdim, cnt[o]), amb);
            const std::size_t d = amb - j + 1;
            F.ob.push_back({d, Mat<GF>(d, d)});
        }
        F.map.resize(c.num_morphisms());
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
            const std::size_t dd = F.ob[c.morphisms[g].dom].dim;
            const std::size_t dc = F.ob[c.morphisms[g].cod].dim;
            Mat<GF> m(dc, dd);
            for (std::size_t i = 0; i < dc; ++i)
                if (i + (dd - dc) < dd) m(i, i + (dd - dc)) = 1;
            F.map[g] = std::move(m);
        }
        return F;
    }
    case 4: { // kernel of the counit of a simpler diagram
        const ModDiagram base = random_mod_diagram(rng, c, coeff, maxdim, depth + 1);
        const Counit cu = counit(c, base);
        return objectwise_kernel(c, cu.lam.fun, cu.eps).fun;
    }
    default: { // direct sum of two simpler diagrams
        const ModDiagram a = random_mod_diagram(rng, c, coeff, maxdim, depth + 1);
        const ModDiagram b = random_mod_diagram(rng, c, coeff, maxdim, depth + 1);
        ModDiagram F;
        F.coeff = coeff;
        for (std::size_t o = 0; o < c.num_objects(); ++o)
            F.ob.push_back(direct_sum({a.ob[o], b.ob[o]}).total);
        F.map.resize(c.num_morphisms());
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
            Mat<GF> m(F.ob[c.morphisms[g].cod].dim, F.ob[c.morphisms[g].dom].dim);
            set_block(m, 0, 0, a.map[g]);
            set_block(m, a.ob[c.morphisms[g].cod].dim, a.ob[c.morphisms[g].dom].dim, b.map[g]);
            F.map[g] = std::move(m);
        }
        return F;
    }
    }
}

// Plain vector-space diagram over F_p: a Mod_R diagram with m = 1, forgotten.
inline VecDiagram<GF> random_vec_diagram_gf(Rng& rng, const FinCat& c, std::uint32_t p,
                                            std::size_t maxdim) {
    return to_vec(random_mod_diagram(rng, c, Coeff{p, 1}, maxdim));
}

// Functor to finitely generated free abelian groups.  Classes: constants,
// monotone flags/co-flags conjugated by unimodular matrices, height-scaled
// rank-one diagrams (all maps multiplication by t^{Δheight}, the class that
// produces torsion in cohomology), and direct sums.
inline VecDiagram<ZZ> random_vec_diagram_z(Rng& rng, const FinCat& c, std::size_t maxdim,
                                           int depth = 0) {
    const ZZ z;
    const auto cnt = detail::reach_counts(c);
    const std::size_t cls = rng.below(depth > 0 ? 3 : 4);
    VecDiagram<ZZ> F;
    switch (cls) {
    case 0: { // constant
        const std::size_t d = 1 + rng.below(maxdim);
        F.dim.assign(c.num_objects(), d);
        F.map.resize(c.num_morphisms());
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) F.map[g] = Mat<ZZ>::identity(d);
        return F;
    }
    case 1: { // monotone flag inclusion, transported along unimodular bases
        F.dim.resize(c.num_objects());
        for (std::size_t o = 0; o < c.num_objects(); ++o)
            F.dim[o] = std::min<std::size_t>(maxdim, cnt[o]);
        F.map.resize(c.num_morphisms());
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
            const std::size_t dd = F.dim[c.morphisms[g].dom], dc = F.dim[c.morphisms[g].cod];
            Mat<ZZ> m(dc, dd);
            for (std::size_t i = 0; i < std::min(dd, dc); ++i) m(i, i) = 1;
            F.map[g] = std::move(m);
        }
        std::vector<Mat<ZZ>> b, binv;
        for (std::size_t o = 0; o < c.num_objects(); ++o) {
            b.push_back(random_unimodular_z(rng, F.dim[o]));
            binv.push_back(*z_solve_matrix(b.back(), Mat<ZZ>::identity(F.dim[o])));
        }
        for (std::size_t g = 0; g < c.num_morphisms(); ++g)
            F.map[g] = mul(z, mul(z, b[c.morphisms[g].cod], F.map[g]), binv[c.morphisms[g].dom]);
        return F;
    }
    case 2: { // rank one, maps t^(height difference)
        const long long t = rng.int_in(2, 3);
        F.dim.assign(c.num_objects(), 1);
        F.map.resize(c.num_morphisms());
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
            const long long dh = (long long)cnt[c.morphisms[g].cod] - (long long)cnt[c.morphisms[g].dom];
            Int v = 1;
            for (long long k = 0; k < dh; ++k) v *= t;
            F.map[g] = Mat<ZZ>(1, 1);
            F.map[g](0, 0) = v;
        }
        return F;
    }
    default: { // direct sum
        const VecDiagram<ZZ> a = random_vec_diagram_z(rng, c, maxdim, depth + 1);
        const VecDiagram<ZZ> b = random_vec_diagram_z(rng, c, maxdim, depth + 1);
        F.dim.resize(c.num_objects());
        for (std::size_t o = 0; o < c.num_objects(); ++o) F.dim[o] = a.dim[o] + b.dim[o];
        F.map.resize(c.num_morphisms());
        for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
            Mat<ZZ> m(F.dim[c.morphisms[g].cod], F.dim[c.morphisms[g].dom]);
            set_block(m, 0, 0, a.map[g]);
            set_block(m, a.dim[c.morphisms[g].cod], a.dim[c.morphisms[g].dom], b.map[g]);
            F.map[g] = std::move(m);
        }
        return F;
    }
    }
}

// Random natural systems: hom systems of random diagram pairs, pullbacks
// along cod, corepresentable hom systems, and constants.
inline NatSystem<GF> random_natsys_gf(Rng& rng, const FinCat& c, const FactCat& fact,
                                      std::uint32_t p, std::size_t maxdim) {
    const GF f(p);
    switch (rng.below(4)) {
    case 0:
        return hom_natural_system_vec(f, c, fact, random_vec_diagram_gf(rng, c, p, maxdim),
                                      random_vec_diagram_gf(rng, c, p, maxdim));
    case 1:
        return cod_system(c, fact, random_vec_diagram_gf(rng, c, p, maxdim));
    case 2:
        return corep_hom_system(f, c, fact, int(rng.below(c.num_objects())),
                                random_vec_diagram_gf(rng, c, p, maxdim))
            .sys;
    default:
        return constant_system<GF>(c, fact, 1 + rng.below(maxdim));
    }
}

inline NatSystem<ZZ> random_natsys_z(Rng& rng, const FinCat& c, const FactCat& fact,
                                     std::size_t maxdim) {
    const ZZ z;
    switch (rng.below(4)) {
    case 0:
        return hom_natural_system_vec(z, c, fact, random_vec_diagram_z(rng, c, maxdim),
                                      random_vec_diagram_z(rng, c, maxdim));
    case 1:
        return cod_system(c, fact, random_vec_diagram_z(rng, c, maxdim));
    case 2:
        return corep_hom_system(z, c, fact, int(rng.below(c.num_objects())),
                                random_vec_diagram_z(rng, c, maxdim))
            .sys;
    default:
        return constant_system<ZZ>(c, fact, 1 + rng.below(maxdim));
    }
}

struct InstanceBounds {
    std::size_t max_objects = 3;
    std::size_t max_dim = 2;
    bool allow_monoid = true;
};

struct RandomInstance {
    FinCat cat;
    ModDiagram F, G;
};

// Reproducible category/diagram/diagram triple for the property suites.
inline RandomInstance random_instance(std::uint64_t seed, const Coeff& coeff,
                                      const InstanceBounds& bounds = {}) {
    Rng rng(seed);
    RandomInstance inst;
    inst.cat = random_category(rng, bounds.max_objects, bounds.allow_monoid);
    inst.F = random_mod_diagram(rng, inst.cat, coeff, bounds.max_dim);
    inst.G = random_mod_diagram(rng, inst.cat, coeff, bounds.max_dim);
    return inst;
}

} // namespace catext
