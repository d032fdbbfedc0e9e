#pragma once

#include <vector>

#include "catext/diagram.hpp"

namespace catext {

// Minimal projective cover P(A) = R^s with s = dim_k(A/xA).  Generator
// targets are standard basis vectors completing im(x) greedily in index
// order, so the cover is deterministic.
struct ProjectiveCover {
    RModule P;
    Mat<GF> pi;       // P -> A, surjective, kernel inside rad P = x·P
    std::size_t gens; // s
};

inline ProjectiveCover projective_cover(const Coeff& coeff, const RModule& a) {
    const GF f = coeff.field();
    Mat<GF> span = image(f, a.x);
    Mat<GF> targets(a.dim, 0);
    for (std::size_t j = 0; j < a.dim && span.cols < a.dim; ++j) {
        Mat<GF> e(a.dim, 1);
        e(j, 0) = 1;
        const Mat<GF> cand = hstack(span, e);
        if (rank(f, cand) > span.cols) {
            span = cand;
            targets = hstack(targets, e);
        }
    }
    ProjectiveCover out;
    out.gens = targets.cols;
    out.P = free_module(coeff, out.gens);
    out.pi = r_linear_from_generators(coeff, a, targets);
    if (rank(f, out.pi) != a.dim) throw InternalError("projective_cover: cover is not surjective");
    // minimality: ker π ⊆ x·P
    const Mat<GF> radical = image(f, out.P.x);
    const Mat<GF> ker = kernel(f, out.pi);
    if (rank(f, hstack(radical, ker)) != rank(f, radical))
        throw InternalError("projective_cover: kernel escapes the radical");
    return out;
}

// Ω(A) = ker(π_A) with the inherited x-action, together with its inclusion.
struct Syzygy {
    RModule omega;
    Mat<GF> incl; // omega -> P(A)
};

inline Syzygy syzygy_of_cover(const Coeff& coeff, const ProjectiveCover& cover) {
    const GF f = coeff.field();
    Syzygy out;
    out.incl = kernel(f, cover.pi);
    auto x = solve_matrix(f, out.incl, mul(f, cover.P.x, out.incl));
    if (!x) throw InternalError("syzygy: x does not preserve the kernel");
    out.omega = {out.incl.cols, std::move(*x)};
    return out;
}

inline RModule syzygy(const Coeff& coeff, const RModule& a) {
    return syzygy_of_cover(coeff, projective_cover(coeff, a)).omega;
}

// The resolution spliced from syzygy short exact sequences: the degree-q
// differential is (kernel inclusion of stage q-1) ∘ (cover of stage q).
struct Resolution {
    Coeff coeff;
    RModule target;
    std::vector<RModule> P;        // P_0..P_Q, free
    std::vector<std::size_t> gens; // generator count per degree
    std::vector<Mat<GF>> d;        // d[q]: P_q -> P_{q-1} for q >= 1; d[0] unused
    Mat<GF> aug;                   // P_0 -> A

    std::size_t top() const { return P.size() - 1; }
};

inline Resolution spliced_resolution(const Coeff& coeff, const RModule& a, std::size_t Q) {
    if (Q < 1) throw Error("spliced_resolution: Q must be at least 1");
    Resolution res;
    res.coeff = coeff;
    res.target = a;
    const GF f = coeff.field();
    RModule cur = a;
    Mat<GF> prev_incl; // Ω_{q} -> P_{q-1}
    for (std::size_t q = 0; q <= Q; ++q) {
        const ProjectiveCover cover = projective_cover(coeff, cur);
        res.P.push_back(cover.P);
        res.gens.push_back(cover.gens);
        if (q == 0) {
            res.aug = cover.pi;
            res.d.emplace_back();
        } else {
            res.d.push_back(mul(f, prev_incl, cover.pi));
        }
        const Syzygy syz = syzygy_of_cover(coeff, cover);
        prev_incl = syz.incl; // Ω_{q+1} inside P_q
        cur = syz.omega;
    }
    for (std::size_t q = 2; q <= Q; ++q)
        if (!is_zero(f, mul(f, res.d[q - 1], res.d[q])))
            throw InternalError("spliced_resolution: d∘d != 0");
    if (!is_zero(f, mul(f, res.aug, res.d[1])))
        throw InternalError("spliced_resolution: aug∘d != 0");
    return res;
}

// Hom_R(P_q, B) in generator-image coordinates: a map is the stack of its
// values on the free generators, so Hom(P_q, B) = B^{gens_q}.  The
// differential is precomposition with d_{q+1}.
struct HomComplex {
    std::vector<std::size_t> dim; // q = 0..Q
    std::vector<Mat<GF>> delta;   // delta[q]: dim[q] -> dim[q+1], q < Q
};

inline HomComplex hom_complex(const Coeff& coeff, const Resolution& res, const RModule& b) {
    const GF f = coeff.field();
    const auto pw = x_powers(coeff, b);
    HomComplex out;
    for (std::size_t q = 0; q <= res.top(); ++q) out.dim.push_back(res.gens[q] * b.dim);
    for (std::size_t q = 0; q + 1 <= res.top(); ++q) {
        const Mat<GF>& dq = res.d[q + 1]; // P_{q+1} -> P_q
        Mat<GF> delta(out.dim[q + 1], out.dim[q]);
        for (std::size_t j = 0; j < res.gens[q + 1]; ++j) {
            // v = image of the j-th generator of P_{q+1} in P_q
            const auto v = column_vec(dq, j * coeff.m);
            for (std::size_t i = 0; i < res.gens[q]; ++i)
                for (std::size_t l = 0; l < coeff.m; ++l) {
                    const GF::Elem coefficient = v[i * coeff.m + l];
                    if (coefficient == 0) continue;
                    for (std::size_t t = 0; t < b.dim; ++t)
                        for (std::size_t t2 = 0; t2 < b.dim; ++t2)
                            delta(j * b.dim + t, i * b.dim + t2) = f.add(
                                delta(j * b.dim + t, i * b.dim + t2),
                                f.mul(coefficient, pw[l](t, t2)));
                }
        }
        out.delta.push_back(std::move(delta));
    }
    return out;
}

// Rebuild the full matrix of an R-linear map P_q -> B from its
// generator-image coordinates.
inline Mat<GF> hom_full_matrix(const Coeff& coeff, const RModule& b, std::size_t gens,
                               const std::vector<GF::Elem>& coords) {
    Mat<GF> g(b.dim, gens);
    for (std::size_t i = 0; i < gens; ++i)
        for (std::size_t t = 0; t < b.dim; ++t) g(t, i) = coords[i * b.dim + t];
    return r_linear_from_generators(coeff, b, g);
}

// Generator-image coordinates of an R-linear map given as a full matrix.
inline std::vector<GF::Elem> hom_stack_matrix(const Coeff& coeff, std::size_t gens,
                                              const Mat<GF>& full) {
    std::vector<GF::Elem> coords(gens * full.rows);
    for (std::size_t i = 0; i < gens; ++i)
        for (std::size_t t = 0; t < full.rows; ++t) coords[i * full.rows + t] = full(t, i * coeff.m);
    return coords;
}

// Ext groups with chosen cocycle representatives and a classifier, obtained
// by taking cohomology of Hom(P_*, B).
struct ExtGroups {
    Coeff coeff;
    RModule B;
    Resolution res;
    HomComplex hc;
    std::vector<std::size_t> dim;     // q = 0..Q
    std::vector<Subquotient> classes; // q = 0..Q, in generator-image coordinates
};

inline ExtGroups ext_objects(const Coeff& coeff, const RModule& a, const RModule& b,
                             std::size_t Q) {
    const GF f = coeff.field();
    ExtGroups out;
    out.coeff = coeff;
    out.B = b;
    out.res = spliced_resolution(coeff, a, Q + 1);
    out.hc = hom_complex(coeff, out.res, b);
    for (std::size_t q = 0; q <= Q; ++q) {
        const Mat<GF> d_in = q == 0 ? Mat<GF>(out.hc.dim[0], 0) : out.hc.delta[q - 1];
        GfHomology h = homology_at(f, d_in, out.hc.delta[q]);
        out.dim.push_back(h.dim);
        out.classes.push_back(std::move(h.classes));
    }
    return out;
}

// Chain map P_*(C) -> P_*(A) over a map f: C -> A, lifted degreewise through
// the augmentations; each step takes the first solution of the lifting system
// in the deterministic basis order.
inline std::vector<Mat<GF>> lift_chain_map(const Coeff& coeff, const Resolution& resC,
                                           const Resolution& resA, const Mat<GF>& fmap) {
    const GF f = coeff.field();
    const std::size_t Q = std::min(resC.top(), resA.top());
    std::vector<Mat<GF>> L;
    for (std::size_t q = 0; q <= Q; ++q) {
        // right-hand side on the generators of P_q(C)
        Mat<GF> rhs(q == 0 ? resA.target.dim : resA.P[q - 1].dim, resC.gens[q]);
        const Mat<GF> prev = q == 0 ? mul(f, fmap, resC.aug) : mul(f, L[q - 1], resC.d[q]);
        for (std::size_t j = 0; j < resC.gens[q]; ++j)
            for (std::size_t i = 0; i < rhs.rows; ++i) rhs(i, j) = prev(i, j * coeff.m);
        const Mat<GF>& through = q == 0 ? resA.aug : resA.d[q];
        auto sol = solve_matrix(f, through, rhs);
        if (!sol) throw InternalError("lift_chain_map: lifting system is inconsistent");
        L.push_back(r_linear_from_generators(coeff, resA.P[q], *sol));
    }
    return L;
}

// Everything needed to evaluate the Ext natural systems of a pair of
// diagrams: per-object resolutions, per-pair hom complexes and Ext classes,
// and per-morphism chain lifts.  Resolutions are built to degree Q+1 so that
// Ext^q is certified for q <= Q.
class ExtSystemBuilder {
public:
    ExtSystemBuilder(const FinCat& cat, const FactCat& fact, const ModDiagram& F,
                     const ModDiagram& G, std::size_t Q)
        : cat_(cat), fact_(fact), coeff_(F.coeff), Q_(Q) {
        if (F.coeff != G.coeff) throw IncompatibleBase("ext system: coefficient mismatch");
        const GF f = coeff_.field();
        const std::size_t n = cat.num_objects();
        res_.reserve(n);
        for (std::size_t a = 0; a < n; ++a) res_.push_back(spliced_resolution(coeff_, F.ob[a], Q + 1));
        ext_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            ext_[a].resize(n);
            for (std::size_t b = 0; b < n; ++b) {
                PairData& pd = ext_[a][b];
                pd.hc = hom_complex(coeff_, res_[a], G.ob[b]);
                for (std::size_t q = 0; q <= Q; ++q) {
                    const Mat<GF> d_in = q == 0 ? Mat<GF>(pd.hc.dim[0], 0) : pd.hc.delta[q - 1];
                    GfHomology h = homology_at(f, d_in, pd.hc.delta[q]);
                    pd.dim.push_back(h.dim);
                    pd.classes.push_back(std::move(h.classes));
                }
            }
        }
        lifts_.resize(cat.num_morphisms());
        for (std::size_t u = 0; u < cat.num_morphisms(); ++u)
            lifts_[u] = lift_chain_map(coeff_, res_[cat.morphisms[u].dom],
                                       res_[cat.morphisms[u].cod], F.map[u]);
        gmaps_ = G.map;
        gmods_ = G.ob;
    }

    std::size_t max_degree() const { return Q_; }

    // The natural system α -> Ext^q(F(dom α), G(cod α)).
    NatSystem<GF> system(std::size_t q) const {
        if (q > Q_) throw Error("ext system: degree beyond the built truncation");
        const GF f = coeff_.field();
        NatSystem<GF> out;
        out.fact = fact_;
        const std::size_t nob = fact_.cat.num_objects();
        out.val.dim.resize(nob);
        for (std::size_t k = 0; k < nob; ++k)
            out.val.dim[k] = ext_[cat_.morphisms[k].dom][cat_.morphisms[k].cod].dim[q];
        out.val.map.resize(fact_.cat.num_morphisms());
        for (std::size_t k = 0; k < fact_.cat.num_morphisms(); ++k) {
            const int fsrc = fact_.cat.morphisms[k].dom, gdst = fact_.cat.morphisms[k].cod;
            const auto [u, v] = fact_.pair_of[k];
            const int a = cat_.morphisms[fsrc].dom, b = cat_.morphisms[fsrc].cod;
            const int cdom = cat_.morphisms[gdst].dom, dcod = cat_.morphisms[gdst].cod;
            const PairData& src = ext_[a][b];
            const PairData& dst = ext_[cdom][dcod];
            Mat<GF> m(dst.dim[q], src.dim[q]);
            for (std::size_t i = 0; i < src.dim[q]; ++i) {
                const auto rep = src.classes[q].representative(i);
                const Mat<GF> phi = hom_full_matrix(coeff_, gmods_[b], res_[a].gens[q], rep);
                // Ext is contravariant through the lift of F(u) and covariant
                // through G(v)
                const Mat<GF> psi = mul(f, gmaps_[v], mul(f, phi, lifts_[u][q]));
                const auto coords = dst.classes[q].classify(
                    f, hom_stack_matrix(coeff_, res_[cdom].gens[q], psi));
                for (std::size_t r = 0; r < coords.size(); ++r) m(r, i) = coords[r];
            }
            out.val.map[k] = std::move(m);
        }
        return out;
    }

private:
    struct PairData {
        HomComplex hc;
        std::vector<std::size_t> dim;
        std::vector<Subquotient> classes;
    };

    FinCat cat_;
    FactCat fact_;
    Coeff coeff_;
    std::size_t Q_;
    std::vector<Resolution> res_;
    std::vector<std::vector<PairData>> ext_;
    std::vector<std::vector<Mat<GF>>> lifts_;
    std::vector<Mat<GF>> gmaps_;
    std::vector<RModule> gmods_;
};

// Single-degree convenience wrapper.
inline NatSystem<GF> ext_natural_system(const FinCat& cat, const ModDiagram& F,
                                        const ModDiagram& G, std::size_t q) {
    const FactCat fact = factorization(cat);
    return ExtSystemBuilder(cat, fact, F, G, q).system(q);
}

} // namespace catext
