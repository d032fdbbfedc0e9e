#pragma once

#include <vector>

#include "catext/diagram.hpp"
#include "catext/smith.hpp"

namespace catext {

// A truncated cochain complex with nerve-labeled bases.  Building with
// truncation N yields terms in degrees 0..N+1 and differentials d^0..d^N, so
// cohomology is available in degrees 0..N.  d∘d = 0 is verified on
// construction.
template <class R>
struct Cochain {
    std::vector<std::size_t> dim;                 // degrees 0..N+1
    std::vector<Mat<R>> d;                        // d[n]: dim[n] -> dim[n+1]
    std::vector<std::vector<NerveChain>> chains;  // basis labels
    std::vector<std::vector<std::size_t>> offset; // fiber offsets per chain

    std::size_t max_cohomology_degree() const { return dim.size() - 2; }
};

template <class R>
void verify_dd(const R& ring, const Cochain<R>& c, const char* who) {
    for (std::size_t n = 0; n + 1 < c.d.size(); ++n)
        if (!is_zero(ring, mul(ring, c.d[n + 1], c.d[n])))
            throw InternalError(std::string(who) + ": d∘d != 0 at degree " + std::to_string(n));
}

namespace detail {

template <class R>
void init_degrees(Cochain<R>& out, const FinCat& cat, std::size_t N, bool normalized,
                  const std::vector<std::size_t>& fiber_of_composite) {
    out.chains.resize(N + 2);
    out.offset.resize(N + 2);
    out.dim.assign(N + 2, 0);
    for (std::size_t n = 0; n <= N + 1; ++n) {
        out.chains[n] = nerve(cat, n, normalized);
        std::size_t at = 0;
        for (const auto& ch : out.chains[n]) {
            out.offset[n].push_back(at);
            at += fiber_of_composite[chain_composite(cat, ch)];
        }
        out.dim[n] = at;
    }
}

} // namespace detail

// The complex C*(C, F) computing derived limits: degree-n cochains assign to
// each chain c_0 -> ... -> c_n an element of F(c_n); the differential drops
// c_i with alternating signs, applying F(α_{n+1}) in the last term.
template <class R>
Cochain<R> limit_complex(const R& ring, const FinCat& cat, const VecDiagram<R>& F, std::size_t N,
                         bool normalized = false) {
    if (N < 1) throw Error("limit_complex: N must be at least 1");
    if (F.dim.size() != cat.num_objects()) throw IncompatibleBase("limit_complex: base mismatch");
    Cochain<R> out;
    // fiber over a chain is F at its codomain
    std::vector<std::size_t> fiber(cat.num_morphisms());
    for (std::size_t f = 0; f < cat.num_morphisms(); ++f)
        fiber[f] = F.dim[cat.morphisms[f].cod];
    detail::init_degrees(out, cat, N, normalized, fiber);

    out.d.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        Mat<R> d(out.dim[n + 1], out.dim[n]);
        for (std::size_t ci = 0; ci < out.chains[n + 1].size(); ++ci) {
            const NerveChain& ch = out.chains[n + 1][ci];
            const std::size_t row = out.offset[n + 1][ci];
            for (std::size_t i = 0; i <= n + 1; ++i) {
                NerveChain face;
                const int sign = (i % 2 == 0) ? +1 : -1;
                if (i == 0) {
                    face.arrows.assign(ch.arrows.begin() + 1, ch.arrows.end());
                    if (face.arrows.empty()) face.object = cat.morphisms[ch.arrows[0]].cod;
                } else if (i <= n) {
                    face.arrows = ch.arrows;
                    face.arrows[i - 1] = cat.compose(ch.arrows[i], ch.arrows[i - 1]);
                    face.arrows.erase(face.arrows.begin() + i);
                } else {
                    face.arrows.assign(ch.arrows.begin(), ch.arrows.end() - 1);
                    if (face.arrows.empty()) face.object = cat.morphisms[ch.arrows.back()].dom;
                }
                const int fi = chain_index(out.chains[n], face);
                if (fi < 0) continue; // degenerate face in the normalized complex
                const std::size_t col = out.offset[n][fi];
                if (i == n + 1) {
                    add_block(ring, d, row, col, F.map[ch.arrows.back()], sign);
                } else {
                    const std::size_t fd = F.dim[chain_cod(cat, ch)];
                    for (std::size_t k = 0; k < fd; ++k) {
                        const auto v = sign >= 0 ? ring.one() : ring.neg(ring.one());
                        d(row + k, col + k) = ring.add(d(row + k, col + k), v);
                    }
                }
            }
        }
        out.d[n] = std::move(d);
    }
    verify_dd(ring, out, "limit_complex");
    return out;
}

// The complex K*(C, D) of Baues–Wirsching cohomology for a natural system D:
// the fiber over (α_1, ..., α_n) is D(α_n ∘ ... ∘ α_1); the differential acts
// by D(α_1, 1) up front, composes adjacent arrows with alternating signs, and
// ends with D(1, α_{n+1}).
template <class R>
Cochain<R> bw_complex(const R& ring, const FinCat& cat, const NatSystem<R>& D, std::size_t N,
                      bool normalized = false) {
    if (N < 1) throw Error("bw_complex: N must be at least 1");
    if (D.fact.cat.num_objects() != cat.num_morphisms() ||
        D.val.dim.size() != cat.num_morphisms())
        throw IncompatibleBase("bw_complex: natural system is not based on this category");
    Cochain<R> out;
    detail::init_degrees(out, cat, N, normalized, D.val.dim);

    out.d.resize(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        Mat<R> d(out.dim[n + 1], out.dim[n]);
        for (std::size_t ci = 0; ci < out.chains[n + 1].size(); ++ci) {
            const NerveChain& ch = out.chains[n + 1][ci];
            const std::size_t row = out.offset[n + 1][ci];
            const int target = chain_composite(cat, ch);
            for (std::size_t i = 0; i <= n + 1; ++i) {
                NerveChain face;
                const int sign = (i % 2 == 0) ? +1 : -1;
                if (i == 0) {
                    face.arrows.assign(ch.arrows.begin() + 1, ch.arrows.end());
                    if (face.arrows.empty()) face.object = cat.morphisms[ch.arrows[0]].cod;
                } else if (i <= n) {
                    face.arrows = ch.arrows;
                    face.arrows[i - 1] = cat.compose(ch.arrows[i], ch.arrows[i - 1]);
                    face.arrows.erase(face.arrows.begin() + i);
                } else {
                    face.arrows.assign(ch.arrows.begin(), ch.arrows.end() - 1);
                    if (face.arrows.empty()) face.object = cat.morphisms[ch.arrows.back()].dom;
                }
                const int fi = chain_index(out.chains[n], face);
                if (fi < 0) continue;
                const std::size_t col = out.offset[n][fi];
                const int source = chain_composite(cat, face);
                if (i == 0) {
                    const int dcod = cat.identity[cat.morphisms[target].cod];
                    const int k = D.fact.find(source, target, ch.arrows.front(), dcod);
                    if (k < 0) throw InternalError("bw_complex: missing (α,1) morphism");
                    add_block(ring, d, row, col, D.val.map[k], sign);
                } else if (i == n + 1) {
                    const int ddom = cat.identity[cat.morphisms[target].dom];
                    const int k = D.fact.find(source, target, ddom, ch.arrows.back());
                    if (k < 0) throw InternalError("bw_complex: missing (1,β) morphism");
                    add_block(ring, d, row, col, D.val.map[k], sign);
                } else {
                    for (std::size_t k = 0; k < D.val.dim[target]; ++k) {
                        const auto v = sign >= 0 ? ring.one() : ring.neg(ring.one());
                        d(row + k, col + k) = ring.add(d(row + k, col + k), v);
                    }
                }
            }
        }
        out.d[n] = std::move(d);
    }
    verify_dd(ring, out, "bw_complex");
    return out;
}

template <class R>
struct CohomologyResult {
    std::vector<typename R::Homology> groups; // degrees 0..N; nothing is reported beyond N
    std::size_t truncation() const { return groups.size() - 1; }
};

inline std::size_t homology_value(const GF& f, const Mat<GF>& d_in, const Mat<GF>& d_out) {
    return homology_at(f, d_in, d_out).dim;
}
inline FGAbelianGroup homology_value(const ZZ& z, const Mat<ZZ>& d_in, const Mat<ZZ>& d_out) {
    return homology_at(z, d_in, d_out);
}

template <class R>
CohomologyResult<R> cohomology(const R& ring, const Cochain<R>& c) {
    CohomologyResult<R> res;
    const std::size_t N = c.max_cohomology_degree();
    for (std::size_t n = 0; n <= N; ++n) {
        const Mat<R> d_in = n == 0 ? Mat<R>(c.dim[0], 0) : c.d[n - 1];
        res.groups.push_back(homology_value(ring, d_in, c.d[n]));
    }
    return res;
}

namespace detail {

// Compatible-family description of lim: one row block per morphism, stating
// x_cod = F(f) x_dom.
template <class R>
Mat<R> equalizer_matrix(const R& ring, const FinCat& cat, const VecDiagram<R>& F) {
    std::vector<std::size_t> ob_off;
    std::size_t total = 0;
    for (std::size_t o = 0; o < cat.num_objects(); ++o) {
        ob_off.push_back(total);
        total += F.dim[o];
    }
    std::size_t rows = 0;
    for (std::size_t f = 0; f < cat.num_morphisms(); ++f) rows += F.dim[cat.morphisms[f].cod];
    Mat<R> m(rows, total);
    std::size_t at = 0;
    for (std::size_t f = 0; f < cat.num_morphisms(); ++f) {
        const auto& mor = cat.morphisms[f];
        for (std::size_t k = 0; k < F.dim[mor.cod]; ++k)
            m(at + k, ob_off[mor.cod] + k) = ring.one();
        add_block(ring, m, at, ob_off[mor.dom], F.map[f], -1);
        at += F.dim[mor.cod];
    }
    return m;
}

inline std::size_t kernel_rank(const GF& f, const Mat<GF>& m) { return kernel(f, m).cols; }
inline std::size_t kernel_rank(const ZZ&, const Mat<ZZ>& m) { return m.cols - z_rank(m); }

inline bool h0_matches(const GF&, std::size_t eq, const std::size_t& h0) { return eq == h0; }
inline bool h0_matches(const ZZ&, std::size_t eq, const FGAbelianGroup& h0) {
    return h0.torsion.empty() && h0.rank == eq;
}

} // namespace detail

// Derived limits via C*(C, F).  H^0 is cross-checked against the direct
// equalizer description of lim; the two must agree exactly.
template <class R>
CohomologyResult<R> limit_cohomology(const R& ring, const FinCat& cat, const VecDiagram<R>& F,
                                     std::size_t N, bool normalized = false) {
    const Cochain<R> c = limit_complex(ring, cat, F, N, normalized);
    CohomologyResult<R> res = cohomology(ring, c);
    const std::size_t eq = detail::kernel_rank(ring, detail::equalizer_matrix(ring, cat, F));
    if (!detail::h0_matches(ring, eq, res.groups[0]))
        throw InternalError("limit_cohomology: H^0 disagrees with the equalizer limit");
    return res;
}

template <class R>
CohomologyResult<R> bw_cohomology(const R& ring, const FinCat& cat, const NatSystem<R>& D,
                                  std::size_t N, bool normalized = false) {
    return cohomology(ring, bw_complex(ring, cat, D, N, normalized));
}

// Hochschild–Mitchell cohomology: Baues–Wirsching cohomology with the
// bimodule pulled back along (dom, cod).
template <class R>
CohomologyResult<R> hochschild_mitchell(const R& ring, const FinCat& cat, const Bimodule<R>& B,
                                        std::size_t N) {
    return bw_cohomology(ring, cat, natsys_from_bimodule(cat, factorization(cat), B), N);
}

// The cochain isomorphism K*(C, M) -> C*(c/C, G∘Q_c) for the natural system
// M(α) = Hom(free C(c, dom α), G(cod α)): a cochain f is sent to
// f~(c -> c_0 -> ... -> c_n) = f(c_0 -> ... -> c_n)(c -> c_0), a relabeling
// of basis coordinates.
template <class R>
struct CommaComparison {
    Cochain<R> K;               // K*(C, M)
    Cochain<R> C;               // C*(c/C, G∘Q_c)
    std::vector<Mat<R>> T;      // degreewise isomorphisms K^n -> C^n
    CommaCat comma;
};

template <class R>
CommaComparison<R> comma_comparison(const R& ring, const FinCat& cat, int c,
                                    const VecDiagram<R>& G, std::size_t N) {
    CommaComparison<R> out;
    const FactCat fact = factorization(cat);
    const CorepHomSystem<R> M = corep_hom_system(ring, cat, fact, c, G);
    out.K = bw_complex(ring, cat, M.sys, N);
    out.comma = comma_under(cat, c);
    const VecDiagram<R> GQ = pullback(out.comma.cat, out.comma.proj, G);
    out.C = limit_complex(ring, out.comma.cat, GQ, N);

    // comma-morphism lookup by (source object, underlying arrow)
    std::map<std::pair<int, int>, int> comma_mor;
    for (std::size_t m = 0; m < out.comma.cat.num_morphisms(); ++m)
        comma_mor[{out.comma.cat.morphisms[m].dom, out.comma.proj.mor[m]}] = int(m);
    auto comma_obj = [&](int w) {
        for (std::size_t k = 0; k < out.comma.object_arrow.size(); ++k)
            if (out.comma.object_arrow[k] == w) return int(k);
        throw InternalError("comma_comparison: arrow out of c not found");
    };

    for (std::size_t n = 0; n <= N + 1; ++n) {
        Mat<R> T(out.C.dim[n], out.K.dim[n]);
        for (std::size_t ci = 0; ci < out.K.chains[n].size(); ++ci) {
            const NerveChain& ch = out.K.chains[n][ci];
            const int comp = chain_composite(cat, ch);
            const std::size_t gdim = G.dim[chain_cod(cat, ch)];
            for (std::size_t wpos = 0; wpos < M.arrows[comp].size(); ++wpos) {
                // build the corresponding chain in c/C
                NerveChain lifted;
                int at = comma_obj(M.arrows[comp][wpos]);
                if (n == 0) {
                    lifted.object = at;
                } else {
                    for (const int arrow : ch.arrows) {
                        const auto it = comma_mor.find({at, arrow});
                        if (it == comma_mor.end())
                            throw InternalError("comma_comparison: missing lifted morphism");
                        lifted.arrows.push_back(it->second);
                        at = out.comma.cat.morphisms[it->second].cod;
                    }
                }
                const int li = chain_index(out.C.chains[n], lifted);
                if (li < 0) throw InternalError("comma_comparison: lifted chain not found");
                const std::size_t row = out.C.offset[n][li];
                const std::size_t col = out.K.offset[n][ci] + wpos * gdim;
                for (std::size_t j = 0; j < gdim; ++j)
                    T(row + j, col + j) = ring.one();
            }
        }
        out.T.push_back(std::move(T));
    }

    // exact commutation and invertibility
    for (std::size_t n = 0; n <= N + 1; ++n) {
        if (out.T[n].rows != out.T[n].cols)
            throw InternalError("comma_comparison: T is not square");
        // T is a permutation matrix by construction; verify one unit per row/column
        std::vector<std::size_t> rowcnt(out.T[n].rows, 0), colcnt(out.T[n].cols, 0);
        for (std::size_t i = 0; i < out.T[n].rows; ++i)
            for (std::size_t j = 0; j < out.T[n].cols; ++j)
                if (!ring.is_zero(out.T[n](i, j))) {
                    ++rowcnt[i];
                    ++colcnt[j];
                }
        for (std::size_t i = 0; i < out.T[n].rows; ++i)
            if (rowcnt[i] != 1 || colcnt[i] != 1)
                throw InternalError("comma_comparison: T is not a permutation");
    }
    for (std::size_t n = 0; n <= N; ++n) {
        const Mat<R> lhs = mul(ring, out.T[n + 1], out.K.d[n]);
        const Mat<R> rhs = mul(ring, out.C.d[n], out.T[n]);
        if (lhs != rhs)
            throw InternalError("comma_comparison: T does not commute with the differentials");
    }
    return out;
}

} // namespace catext
