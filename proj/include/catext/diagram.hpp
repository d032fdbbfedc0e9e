#pragma once

#include <string>
#include <vector>

#include "catext/fincat.hpp"
#include "catext/module.hpp"

namespace catext {

// A functor from a finite category to finite-dimensional vector spaces
// (R = GF) or finitely generated free abelian groups (R = ZZ).  Matrices
// follow the composition convention F(g∘f) = F(g)·F(f).
template <class R>
struct VecDiagram {
    std::vector<std::size_t> dim;
    std::vector<Mat<R>> map;
};

template <class R>
ValidationReport check_functor(const R& ring, const FinCat& c, const VecDiagram<R>& F) {
    ValidationReport rep;
    if (F.dim.size() != c.num_objects() || F.map.size() != c.num_morphisms()) {
        rep.violations.push_back({"structure", "diagram tables have wrong size"});
        return rep;
    }
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
        const auto& m = c.morphisms[f];
        if (F.map[f].rows != F.dim[m.cod] || F.map[f].cols != F.dim[m.dom])
            rep.violations.push_back({"structure", "matrix shape at '" + m.name + "'"});
    }
    if (!rep.ok()) return rep;
    for (std::size_t o = 0; o < c.num_objects(); ++o)
        if (F.map[c.identity[o]] != Mat<R>::identity(F.dim[o]))
            rep.violations.push_back({"identity", "F(id) != id at '" + c.objects[o] + "'"});
    for (std::size_t g = 0; g < c.num_morphisms(); ++g)
        for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
            if (!c.composable(int(g), int(f))) continue;
            if (F.map[c.compose(int(g), int(f))] != mul(ring, F.map[g], F.map[f]))
                rep.violations.push_back({"functoriality", "F(g∘f) != F(g)F(f) at ('" +
                                                            c.morphisms[g].name + "','" +
                                                            c.morphisms[f].name + "')"});
        }
    return rep;
}

// Compose a diagram on the target of a functor with the functor.
template <class R>
VecDiagram<R> pullback(const FinCat& src, const CatMap& Q, const VecDiagram<R>& D) {
    VecDiagram<R> out;
    out.dim.resize(src.num_objects());
    for (std::size_t o = 0; o < src.num_objects(); ++o) out.dim[o] = D.dim[Q.ob[o]];
    out.map.resize(src.num_morphisms());
    for (std::size_t f = 0; f < src.num_morphisms(); ++f) out.map[f] = D.map[Q.mor[f]];
    return out;
}

// A functor C -> Mod_R for R = F_p[x]/(x^m): modules with x-action plus
// R-linear structure maps.
struct ModDiagram {
    Coeff coeff;
    std::vector<RModule> ob;
    std::vector<Mat<GF>> map;
};

inline VecDiagram<GF> to_vec(const ModDiagram& F) {
    VecDiagram<GF> v;
    v.dim.reserve(F.ob.size());
    for (const auto& a : F.ob) v.dim.push_back(a.dim);
    v.map = F.map;
    return v;
}

inline ValidationReport check_functor(const FinCat& c, const ModDiagram& F) {
    const GF f = F.coeff.field();
    ValidationReport rep = check_functor(f, c, to_vec(F));
    for (std::size_t o = 0; o < F.ob.size(); ++o) {
        try {
            validate_module(F.coeff, F.ob[o]);
        } catch (const Error& e) {
            rep.violations.push_back({"structure", std::string(e.what()) + " at '" + c.objects[o] + "'"});
        }
    }
    if (!rep.ok()) return rep;
    for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
        const auto& m = c.morphisms[g];
        if (mul(f, F.map[g], F.ob[m.dom].x) != mul(f, F.ob[m.cod].x, F.map[g]))
            rep.violations.push_back({"linearity", "F('" + m.name + "') does not commute with x"});
    }
    return rep;
}

// Restriction to objects: O(F) = F|_{Ob C}.
using ObFamily = std::vector<RModule>;

inline ObFamily restrict_to_objects(const ModDiagram& F) { return F.ob; }

// The left adjoint Λ of the restriction functor.  Λ(D)(c) is the direct sum
// of D(dom u) over all morphisms u with cod u = c, summands in morphism input
// order; Λ(D)(g) sends the u-summand identically onto the (g∘u)-summand.
struct LambdaDiagram {
    ModDiagram fun;
    struct Summand {
        int arrow;          // u
        int source;         // dom u
        std::size_t offset;
        std::size_t dim;
    };
    std::vector<std::vector<Summand>> summands; // per object

    // offset of the u-summand at the object cod(u)
    std::size_t offset_of(int obj, int arrow) const {
        for (const auto& s : summands[obj])
            if (s.arrow == arrow) return s.offset;
        throw InternalError("LambdaDiagram: unknown summand");
    }
};

inline LambdaDiagram lambda(const FinCat& c, const Coeff& coeff, const ObFamily& D) {
    if (D.size() != c.num_objects()) throw IncompatibleBase("lambda: family size mismatch");
    check_size_guard(c, "lambda");
    LambdaDiagram out;
    out.fun.coeff = coeff;
    out.summands.resize(c.num_objects());
    for (std::size_t o = 0; o < c.num_objects(); ++o) {
        std::vector<RModule> parts;
        for (std::size_t u = 0; u < c.num_morphisms(); ++u)
            if (c.morphisms[u].cod == int(o)) {
                out.summands[o].push_back({int(u), c.morphisms[u].dom, 0, D[c.morphisms[u].dom].dim});
                parts.push_back(D[c.morphisms[u].dom]);
            }
        SumDecomposition sum = direct_sum(parts);
        for (std::size_t k = 0; k < out.summands[o].size(); ++k)
            out.summands[o][k].offset = sum.offset[k];
        out.fun.ob.push_back(sum.total);
    }
    out.fun.map.resize(c.num_morphisms());
    for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
        const int src = c.morphisms[g].dom, dst = c.morphisms[g].cod;
        Mat<GF> m(out.fun.ob[dst].dim, out.fun.ob[src].dim);
        for (const auto& s : out.summands[src]) {
            const int gu = c.compose(int(g), s.arrow);
            for (const auto& t : out.summands[dst])
                if (t.arrow == gu) {
                    for (std::size_t i = 0; i < s.dim; ++i) m(t.offset + i, s.offset + i) = 1;
                    break;
                }
        }
        out.fun.map[g] = std::move(m);
    }
    return out;
}

inline ModDiagram constant_mod_diagram(const FinCat& c, const Coeff& coeff, const RModule& a) {
    ModDiagram F;
    F.coeff = coeff;
    F.ob.assign(c.num_objects(), a);
    F.map.resize(c.num_morphisms());
    for (std::size_t g = 0; g < c.num_morphisms(); ++g) F.map[g] = Mat<GF>::identity(a.dim);
    return F;
}

// The objectwise kernel of a natural transformation η: F -> T, with its
// inclusion into F.  Induced structure maps are solved against the kernel
// bases; naturality of η makes the solves consistent.
struct KernelDiagram {
    ModDiagram fun;
    std::vector<Mat<GF>> incl; // per object, K(c) -> F(c)
};

inline KernelDiagram objectwise_kernel(const FinCat& c, const ModDiagram& F,
                                       const std::vector<Mat<GF>>& eta) {
    const GF f = F.coeff.field();
    KernelDiagram out;
    out.fun.coeff = F.coeff;
    out.fun.ob.resize(c.num_objects());
    out.incl.resize(c.num_objects());
    for (std::size_t o = 0; o < c.num_objects(); ++o) {
        Mat<GF> K = kernel(f, eta[o]);
        auto xk = solve_matrix(f, K, mul(f, F.ob[o].x, K));
        if (!xk) throw InternalError("objectwise_kernel: x does not preserve the kernel");
        out.fun.ob[o] = {K.cols, std::move(*xk)};
        out.incl[o] = std::move(K);
    }
    out.fun.map.resize(c.num_morphisms());
    for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
        const int d0 = c.morphisms[g].dom, d1 = c.morphisms[g].cod;
        auto kg = solve_matrix(f, out.incl[d1], mul(f, F.map[g], out.incl[d0]));
        if (!kg) throw InternalError("objectwise_kernel: map does not preserve the kernel");
        out.fun.map[g] = std::move(*kg);
    }
    return out;
}

// Counit ε_F : ΛOF -> F; the component at c acts on the u-summand by F(u).
struct Counit {
    LambdaDiagram lam;
    std::vector<Mat<GF>> eps; // per object
};

inline Counit counit(const FinCat& c, const ModDiagram& F) {
    Counit out;
    out.lam = lambda(c, F.coeff, restrict_to_objects(F));
    const GF f = F.coeff.field();
    out.eps.resize(c.num_objects());
    for (std::size_t o = 0; o < c.num_objects(); ++o) {
        Mat<GF> e(F.ob[o].dim, out.lam.fun.ob[o].dim);
        for (const auto& s : out.lam.summands[o]) set_block(e, 0, s.offset, F.map[s.arrow]);
        out.eps[o] = std::move(e);
    }
    return out;
}

// A natural system: a functor on the factorization category C'.  The base
// category is kept alongside since C' objects are its morphisms.
template <class R>
struct NatSystem {
    FactCat fact;
    VecDiagram<R> val; // on fact.cat
};

template <class R>
ValidationReport check_natsys(const R& ring, const NatSystem<R>& D) {
    return check_functor(ring, D.fact.cat, D.val);
}

// Hom natural system of two Mod_R diagrams: the value at the C'-object
// f: a -> b is Hom_R(F(a), G(b)) in the hom_basis coordinates, and a
// C'-morphism (u, v) acts by φ -> G(v) ∘ φ ∘ F(u).
struct HomSystem {
    NatSystem<GF> sys;
    std::vector<std::vector<Mat<GF>>> basis; // per C' object
};

inline HomSystem hom_system(const FinCat& c, const FactCat& fact, const ModDiagram& F,
                            const ModDiagram& G) {
    if (F.coeff != G.coeff) throw IncompatibleBase("hom_system: coefficient mismatch");
    if (F.ob.size() != c.num_objects() || G.ob.size() != c.num_objects())
        throw IncompatibleBase("hom_system: base mismatch");
    const GF f = F.coeff.field();
    HomSystem out;
    out.sys.fact = fact;
    const std::size_t nobj = fact.cat.num_objects();
    out.basis.resize(nobj);
    out.sys.val.dim.resize(nobj);
    for (std::size_t k = 0; k < nobj; ++k) {
        const int a = c.morphisms[k].dom, b = c.morphisms[k].cod;
        out.basis[k] = hom_basis(F.coeff, F.ob[a], G.ob[b]);
        out.sys.val.dim[k] = out.basis[k].size();
    }
    out.sys.val.map.resize(fact.cat.num_morphisms());
    for (std::size_t k = 0; k < fact.cat.num_morphisms(); ++k) {
        const int src = fact.cat.morphisms[k].dom, dst = fact.cat.morphisms[k].cod;
        const auto [u, v] = fact.pair_of[k];
        Mat<GF> m(out.sys.val.dim[dst], out.sys.val.dim[src]);
        for (std::size_t i = 0; i < out.basis[src].size(); ++i) {
            const Mat<GF> img = mul(f, G.map[v], mul(f, out.basis[src][i], F.map[u]));
            const auto coords = hom_coords(f, out.basis[dst], img);
            for (std::size_t r = 0; r < coords.size(); ++r) m(r, i) = coords[r];
        }
        out.sys.val.map[k] = std::move(m);
    }
    return out;
}

inline NatSystem<GF> hom_natural_system(const FinCat& c, const ModDiagram& F, const ModDiagram& G) {
    return hom_system(c, factorization(c), F, G).sys;
}

// Hom system of two plain vector-space (or free abelian group) diagrams:
// values are full matrix spaces in vec coordinates, actions are Kronecker
// products F(u)ᵀ ⊗ G(v).
template <class R>
NatSystem<R> hom_natural_system_vec(const R& ring, const FinCat& c, const FactCat& fact,
                                    const VecDiagram<R>& F, const VecDiagram<R>& G) {
    if (F.dim.size() != c.num_objects() || G.dim.size() != c.num_objects())
        throw IncompatibleBase("hom_natural_system_vec: base mismatch");
    NatSystem<R> out;
    out.fact = fact;
    const std::size_t nobj = fact.cat.num_objects();
    out.val.dim.resize(nobj);
    for (std::size_t k = 0; k < nobj; ++k)
        out.val.dim[k] = F.dim[c.morphisms[k].dom] * G.dim[c.morphisms[k].cod];
    out.val.map.resize(fact.cat.num_morphisms());
    for (std::size_t k = 0; k < fact.cat.num_morphisms(); ++k) {
        const auto [u, v] = fact.pair_of[k];
        out.val.map[k] = kron(ring, transpose(F.map[u]), G.map[v]);
    }
    return out;
}

// The natural system F ∘ cod: the value at f is F(cod f) and (u, v) acts by
// F(v).  Baues–Wirsching cohomology with these coefficients is the classical
// functor cohomology of F.
template <class R>
NatSystem<R> cod_system(const FinCat& c, const FactCat& fact, const VecDiagram<R>& F) {
    NatSystem<R> out;
    out.fact = fact;
    out.val.dim.resize(fact.cat.num_objects());
    for (std::size_t k = 0; k < fact.cat.num_objects(); ++k)
        out.val.dim[k] = F.dim[c.morphisms[k].cod];
    out.val.map.resize(fact.cat.num_morphisms());
    for (std::size_t k = 0; k < fact.cat.num_morphisms(); ++k)
        out.val.map[k] = F.map[fact.pair_of[k].second];
    return out;
}

template <class R>
NatSystem<R> constant_system(const FinCat&, const FactCat& fact, std::size_t d) {
    NatSystem<R> out;
    out.fact = fact;
    out.val.dim.assign(fact.cat.num_objects(), d);
    out.val.map.assign(fact.cat.num_morphisms(), Mat<R>::identity(d));
    return out;
}

// The Hom bimodule of two diagrams as a functor on C^op × C, in vec
// coordinates; pulled back along (dom, cod) it gives the Hochschild–Mitchell
// coefficients.
template <class R>
struct Bimodule {
    FinCat prod; // product(opposite(c), c)
    VecDiagram<R> val;
};

template <class R>
Bimodule<R> hom_bimodule(const R& ring, const FinCat& c, const VecDiagram<R>& F,
                         const VecDiagram<R>& G) {
    Bimodule<R> out;
    const FinCat op = opposite(c);
    out.prod = product(op, c);
    const std::size_t nb = c.num_objects();
    out.val.dim.resize(out.prod.num_objects());
    for (std::size_t a = 0; a < nb; ++a)
        for (std::size_t b = 0; b < nb; ++b) out.val.dim[a * nb + b] = F.dim[a] * G.dim[b];
    out.val.map.resize(out.prod.num_morphisms());
    const std::size_t nm = c.num_morphisms();
    for (std::size_t u = 0; u < nm; ++u)
        for (std::size_t v = 0; v < nm; ++v)
            out.val.map[u * nm + v] = kron(ring, transpose(F.map[u]), G.map[v]);
    return out;
}

// The product construction above matches domcod_functor's index convention,
// so a natural system is the pullback of the bimodule along (dom, cod).
template <class R>
NatSystem<R> natsys_from_bimodule(const FinCat& c, const FactCat& fact, const Bimodule<R>& B) {
    NatSystem<R> out;
    out.fact = fact;
    const CatMap dc = domcod_functor(c, fact);
    out.val = pullback(fact.cat, dc, B.val);
    return out;
}

// The natural system α -> Hom(free(C(s, dom α)), G(cod α)) used in the
// comma-category comparison: the value at f is a product of copies of
// G(cod f), one per arrow s -> dom f, and (u, v): g -> h sends the component
// at w': s -> dom h to G(v) applied to the component at u∘w'.
template <class R>
struct CorepHomSystem {
    NatSystem<R> sys;
    std::vector<std::vector<int>> arrows; // per C' object f: all w with dom w = s, cod w = dom f
};

template <class R>
CorepHomSystem<R> corep_hom_system(const R& ring, const FinCat& c, const FactCat& fact, int s,
                                   const VecDiagram<R>& G) {
    CorepHomSystem<R> out;
    out.sys.fact = fact;
    const std::size_t nobj = fact.cat.num_objects();
    out.arrows.resize(nobj);
    out.sys.val.dim.resize(nobj);
    for (std::size_t k = 0; k < nobj; ++k) {
        for (std::size_t w = 0; w < c.num_morphisms(); ++w)
            if (c.morphisms[w].dom == s && c.morphisms[w].cod == c.morphisms[k].dom)
                out.arrows[k].push_back(int(w));
        out.sys.val.dim[k] = out.arrows[k].size() * G.dim[c.morphisms[k].cod];
    }
    out.sys.val.map.resize(fact.cat.num_morphisms());
    for (std::size_t k = 0; k < fact.cat.num_morphisms(); ++k) {
        const int g = fact.cat.morphisms[k].dom, h = fact.cat.morphisms[k].cod;
        const auto [u, v] = fact.pair_of[k];
        const std::size_t gd = G.dim[c.morphisms[g].cod];
        const std::size_t hd = G.dim[c.morphisms[h].cod];
        Mat<R> m(out.sys.val.dim[h], out.sys.val.dim[g]);
        for (std::size_t bp = 0; bp < out.arrows[h].size(); ++bp) {
            const int w = c.compose(u, out.arrows[h][bp]); // u ∘ w'
            for (std::size_t b = 0; b < out.arrows[g].size(); ++b)
                if (out.arrows[g][b] == w) {
                    for (std::size_t i = 0; i < hd; ++i)
                        for (std::size_t j = 0; j < gd; ++j)
                            m(bp * hd + i, b * gd + j) = G.map[v](i, j);
                    break;
                }
        }
        out.sys.val.map[k] = std::move(m);
    }
    return out;
}

} // namespace catext
