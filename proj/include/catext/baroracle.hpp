#pragma once

#include <algorithm>
#include <vector>

#include "catext/diagram.hpp"

namespace catext {

// Independent Ext oracle through the category algebra RC: the free R-module
// on the morphisms of C with the product of the composition table (zero when
// not composable).  Functors correspond to RC-modules via M = ⊕_c F(c), and
// Ext in the functor category is module Ext over RC.
//
// Ext is computed from the bar resolution of RC relative to the semisimple
// subalgebra spanned by the object idempotents, normalized: bar slots range
// over a basis of RC/S, and merged products drop their S-component.  This
// path shares no code with the resolution machinery it cross-checks.

struct CategoryAlgebraModule {
    Coeff coeff;
    std::vector<std::size_t> offset; // per object of C
    std::size_t dim = 0;
    std::vector<Mat<GF>> blocks; // per morphism f: F(f) as a block M_dom -> M_cod
    Mat<GF> x;                   // blockdiagonal action of the algebra generator
};

inline CategoryAlgebraModule functor_to_algebra_module(const FinCat& c, const ModDiagram& F) {
    if (F.ob.size() != c.num_objects()) throw IncompatibleBase("functor_to_algebra_module");
    CategoryAlgebraModule m;
    m.coeff = F.coeff;
    for (std::size_t o = 0; o < c.num_objects(); ++o) {
        m.offset.push_back(m.dim);
        m.dim += F.ob[o].dim;
    }
    m.blocks = F.map;
    m.x = Mat<GF>(m.dim, m.dim);
    for (std::size_t o = 0; o < c.num_objects(); ++o) set_block(m.x, m.offset[o], m.offset[o], F.ob[o].x);
    return m;
}

namespace barinternal {

// Basis element x^j f of RC/S: identities appear only with j >= 1.
struct BarLetter {
    int mor;
    std::uint32_t power;
    int dom, cod;
};

struct BarContext {
    const FinCat& cat;
    Coeff coeff;
    std::vector<BarLetter> letters;
    // letter lookup by (mor, power); -1 when the product lies in S or is zero
    std::vector<int> letter_index; // mor * m + power

    BarContext(const FinCat& c, const Coeff& coeff_) : cat(c), coeff(coeff_) {
        letter_index.assign(c.num_morphisms() * coeff.m, -1);
        for (std::size_t f = 0; f < c.num_morphisms(); ++f)
            for (std::uint32_t j = 0; j < coeff.m; ++j) {
                if (c.is_identity(int(f)) && j == 0) continue;
                letter_index[f * coeff.m + j] = int(letters.size());
                letters.push_back({int(f), j, c.morphisms[f].dom, c.morphisms[f].cod});
            }
    }

    // v · w in RC, projected to RC/S: -1 encodes zero or an S-element.
    int merge(int v, int w) const {
        const BarLetter& a = letters[v];
        const BarLetter& b = letters[w];
        if (b.cod != a.dom) throw InternalError("bar merge: letters not composable");
        const std::uint32_t j = a.power + b.power;
        if (j >= coeff.m) return -1; // x^m = 0
        const int composite = cat.compose(a.mor, b.mor);
        return letter_index[std::size_t(composite) * coeff.m + j];
    }
};

// Composable letter words [v_1 | ... | v_n] with dom(v_i) = cod(v_{i+1});
// degree 0 stores the object.  Enumerated in lexicographic order.
struct BarWord {
    int object = -1;
    std::vector<int> letters;

    bool operator==(const BarWord&) const = default;
    bool operator<(const BarWord& o) const {
        if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
        if (letters.empty()) return object < o.object;
        return letters < o.letters;
    }
};

inline std::vector<BarWord> enumerate_words(const BarContext& ctx, std::size_t n) {
    std::vector<BarWord> out;
    if (n == 0) {
        for (std::size_t o = 0; o < ctx.cat.num_objects(); ++o) out.push_back({int(o), {}});
        return out;
    }
    BarWord cur;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t v = 0; v < ctx.letters.size(); ++v) {
            if (depth > 0 && ctx.letters[cur.letters.back()].dom != ctx.letters[v].cod) continue;
            cur.letters.push_back(int(v));
            self(self, depth + 1);
            cur.letters.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline int word_index(const std::vector<BarWord>& words, const BarWord& w) {
    auto it = std::lower_bound(words.begin(), words.end(), w);
    if (it == words.end() || !(*it == w)) return -1;
    return int(it - words.begin());
}

inline int word_dom_object(const BarContext& ctx, const BarWord& w) {
    return w.letters.empty() ? w.object : ctx.letters[w.letters.back()].dom;
}
inline int word_cod_object(const BarContext& ctx, const BarWord& w) {
    return w.letters.empty() ? w.object : ctx.letters[w.letters.front()].cod;
}

} // namespace barinternal

// Dimensions of Ext^n(F, G) in the functor category for n <= N.
inline std::vector<std::size_t> oracle_ext(const FinCat& cat, const ModDiagram& F,
                                           const ModDiagram& G, std::size_t N) {
    using namespace barinternal;
    if (F.coeff != G.coeff) throw IncompatibleBase("oracle_ext: coefficient mismatch");
    const Coeff coeff = F.coeff;
    const GF f = coeff.field();
    const BarContext ctx(cat, coeff);
    const CategoryAlgebraModule MF = functor_to_algebra_module(cat, F);
    const CategoryAlgebraModule MG = functor_to_algebra_module(cat, G);

    // letter action on the module side: F(f)·x^j between object blocks
    auto letter_action = [&](const CategoryAlgebraModule& M, const std::vector<RModule>& mods,
                             int v) {
        const BarLetter& L = ctx.letters[v];
        Mat<GF> a = M.blocks[L.mor];
        for (std::uint32_t j = 0; j < L.power; ++j) a = mul(f, a, mods[L.dom].x);
        return a;
    };
    std::vector<Mat<GF>> actF(ctx.letters.size()), actG(ctx.letters.size());
    for (std::size_t v = 0; v < ctx.letters.size(); ++v) {
        actF[v] = letter_action(MF, F.ob, int(v));
        actG[v] = letter_action(MG, G.ob, int(v));
    }

    // Hom cochain spaces C^n = ⊕_words Hom_k(MF_dom(last), MG_cod(first))
    std::vector<std::vector<BarWord>> words(N + 2);
    std::vector<std::vector<std::size_t>> off(N + 2);
    std::vector<std::size_t> dim(N + 2, 0);
    for (std::size_t n = 0; n <= N + 1; ++n) {
        words[n] = enumerate_words(ctx, n);
        for (const auto& w : words[n]) {
            off[n].push_back(dim[n]);
            dim[n] += F.ob[word_dom_object(ctx, w)].dim * G.ob[word_cod_object(ctx, w)].dim;
        }
    }

    std::vector<Mat<GF>> delta(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        Mat<GF> d(dim[n + 1], dim[n]);
        for (std::size_t wi = 0; wi < words[n + 1].size(); ++wi) {
            const BarWord& w = words[n + 1][wi];
            const std::size_t row = off[n + 1][wi];
            const std::size_t dm = F.ob[word_dom_object(ctx, w)].dim;
            // leading term: the first letter acts on the G side
            {
                BarWord face;
                face.letters.assign(w.letters.begin() + 1, w.letters.end());
                if (face.letters.empty()) face.object = ctx.letters[w.letters[0]].dom;
                const int fi = word_index(words[n], face);
                if (fi < 0) throw InternalError("oracle_ext: missing leading face");
                add_block(f, d, row, off[n][fi],
                          kron(f, Mat<GF>::identity(dm), actG[w.letters.front()]), +1);
            }
            // merged middle terms; S-components and nilpotent kills drop out
            for (std::size_t i = 1; i <= n; ++i) {
                const int merged = ctx.merge(w.letters[i - 1], w.letters[i]);
                if (merged < 0) continue;
                BarWord face;
                face.letters = w.letters;
                face.letters[i - 1] = merged;
                face.letters.erase(face.letters.begin() + i);
                const int fi = word_index(words[n], face);
                if (fi < 0) throw InternalError("oracle_ext: missing merged face");
                const int sign = (i % 2 == 0) ? +1 : -1;
                const std::size_t total = F.ob[word_dom_object(ctx, w)].dim *
                                          G.ob[word_cod_object(ctx, w)].dim;
                for (std::size_t k = 0; k < total; ++k) {
                    const auto vv = sign >= 0 ? f.one() : f.neg(f.one());
                    d(row + k, off[n][fi] + k) = f.add(d(row + k, off[n][fi] + k), vv);
                }
            }
            // trailing term: the last letter acts on the F side
            {
                BarWord face;
                face.letters.assign(w.letters.begin(), w.letters.end() - 1);
                if (face.letters.empty()) face.object = ctx.letters[w.letters.back()].cod;
                const int fi = word_index(words[n], face);
                if (fi < 0) throw InternalError("oracle_ext: missing trailing face");
                const std::size_t dg = G.ob[word_cod_object(ctx, w)].dim;
                const int sign = ((n + 1) % 2 == 0) ? +1 : -1;
                add_block(f, d, row, off[n][fi],
                          kron(f, transpose(actF[w.letters.back()]), Mat<GF>::identity(dg)), sign);
            }
        }
        delta[n] = std::move(d);
    }
    for (std::size_t n = 0; n + 1 <= N; ++n)
        if (!is_zero(f, mul(f, delta[n + 1], delta[n])))
            throw InternalError("oracle_ext: bar differential does not square to zero");

    std::vector<std::size_t> out;
    for (std::size_t n = 0; n <= N; ++n) {
        const Mat<GF> d_in = n == 0 ? Mat<GF>(dim[0], 0) : delta[n - 1];
        out.push_back(homology_at(f, d_in, delta[n]).dim);
    }
    return out;
}

} // namespace catext
