#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "catext/errors.hpp"

namespace catext {

// A finite category presented by a total composition table.  Objects and
// morphisms are kept in their input order; every derived basis in the engine
// inherits that order, which makes all matrices reproducible.
//
// Identities are ordinary listed morphisms, flagged through `identity`
// (object index -> morphism index).
struct FinCat {
    struct Mor {
        std::string name;
        int dom = 0, cod = 0;
        bool operator==(const Mor&) const = default;
    };

    std::vector<std::string> objects;
    std::vector<Mor> morphisms;
    std::vector<int> identity; // per object
    std::vector<int> table;    // table[g * |Mor| + f] = g∘f, or -1

    std::size_t num_objects() const { return objects.size(); }
    std::size_t num_morphisms() const { return morphisms.size(); }

    bool composable(int g, int f) const {
        return morphisms[f].cod == morphisms[g].dom;
    }
    int compose(int g, int f) const { return table[std::size_t(g) * morphisms.size() + f]; }
    int& compose_entry(int g, int f) { return table[std::size_t(g) * morphisms.size() + f]; }

    bool is_identity(int f) const { return identity[morphisms[f].dom] == f && morphisms[f].dom == morphisms[f].cod; }

    int object_index(const std::string& name) const {
        for (std::size_t i = 0; i < objects.size(); ++i)
            if (objects[i] == name) return int(i);
        return -1;
    }
    int morphism_index(const std::string& name) const {
        for (std::size_t i = 0; i < morphisms.size(); ++i)
            if (morphisms[i].name == name) return int(i);
        return -1;
    }

    bool operator==(const FinCat&) const = default;
};

// Incremental construction helper.  finalize() fills identity composites
// implied by the identity laws and checks the table is total.
class FinCatBuilder {
public:
    int add_object(const std::string& name) {
        cat_.objects.push_back(name);
        cat_.identity.push_back(-1);
        return int(cat_.objects.size()) - 1;
    }
    int add_morphism(const std::string& name, int dom, int cod) {
        cat_.morphisms.push_back({name, dom, cod});
        return int(cat_.morphisms.size()) - 1;
    }
    int add_identity(const std::string& name, int obj) {
        const int m = add_morphism(name, obj, obj);
        cat_.identity[obj] = m;
        return m;
    }
    void mark_identity(int obj, int mor) { cat_.identity[obj] = mor; }
    void set_composite(int g, int f, int gf) { composites_.push_back({g, f, gf}); }

    const FinCat& peek() const { return cat_; }

    FinCat finalize() {
        const std::size_t m = cat_.morphisms.size();
        for (std::size_t o = 0; o < cat_.objects.size(); ++o)
            if (cat_.identity[o] < 0)
                throw Error("FinCatBuilder: object '" + cat_.objects[o] + "' has no identity");
        cat_.table.assign(m * m, -1);
        for (std::size_t g = 0; g < m; ++g)
            for (std::size_t f = 0; f < m; ++f) {
                if (!cat_.composable(int(g), int(f))) continue;
                if (cat_.is_identity(int(g)))
                    cat_.compose_entry(int(g), int(f)) = int(f);
                else if (cat_.is_identity(int(f)))
                    cat_.compose_entry(int(g), int(f)) = int(g);
            }
        for (const auto& [g, f, gf] : composites_) {
            if (!cat_.composable(g, f))
                throw Error("FinCatBuilder: '" + cat_.morphisms[g].name + "' ∘ '" +
                            cat_.morphisms[f].name + "' is not composable");
            const int prev = cat_.compose(g, f);
            if (prev >= 0 && prev != gf)
                throw Error("FinCatBuilder: conflicting composite for '" +
                            cat_.morphisms[g].name + "' ∘ '" + cat_.morphisms[f].name + "'");
            cat_.compose_entry(g, f) = gf;
        }
        for (std::size_t g = 0; g < m; ++g)
            for (std::size_t f = 0; f < m; ++f)
                if (cat_.composable(int(g), int(f)) && cat_.compose(int(g), int(f)) < 0)
                    throw Error("FinCatBuilder: composition table is missing '" +
                                cat_.morphisms[g].name + "' ∘ '" + cat_.morphisms[f].name + "'");
        return std::move(cat_);
    }

private:
    FinCat cat_;
    std::vector<std::array<int, 3>> composites_;
};

struct ValidationReport {
    struct Violation {
        std::string kind;   // "identity", "associativity", "closure", "structure"
        std::string detail;
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks the category axioms instance by instance and reports every failure.
inline ValidationReport validate(const FinCat& c) {
    ValidationReport rep;
    const int m = int(c.num_morphisms());
    for (std::size_t o = 0; o < c.num_objects(); ++o) {
        const int id = c.identity[o];
        if (id < 0 || id >= m || c.morphisms[id].dom != int(o) || c.morphisms[id].cod != int(o))
            rep.violations.push_back({"structure", "object '" + c.objects[o] + "' lacks a well-formed identity"});
    }
    if (!rep.ok()) return rep; // identity indices are used below
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            const int gf = c.compose(g, f);
            if (!c.composable(g, f)) {
                if (gf != -1)
                    rep.violations.push_back({"closure", "composite defined for non-composable ('" +
                                                          c.morphisms[g].name + "','" + c.morphisms[f].name + "')"});
                continue;
            }
            if (gf < 0 || gf >= m) {
                rep.violations.push_back({"closure", "missing composite ('" + c.morphisms[g].name +
                                                      "','" + c.morphisms[f].name + "')"});
                continue;
            }
            if (c.morphisms[gf].dom != c.morphisms[f].dom || c.morphisms[gf].cod != c.morphisms[g].cod)
                rep.violations.push_back({"closure", "composite ('" + c.morphisms[g].name + "','" +
                                                      c.morphisms[f].name + "') has wrong endpoints"});
        }
    for (int f = 0; f < m; ++f) {
        const int ld = c.identity[c.morphisms[f].dom];
        const int lc = c.identity[c.morphisms[f].cod];
        if (c.compose(f, ld) != f)
            rep.violations.push_back({"identity", "'" + c.morphisms[f].name + "' ∘ '" +
                                                   c.morphisms[ld].name + "' != '" + c.morphisms[f].name + "'"});
        if (c.compose(lc, f) != f)
            rep.violations.push_back({"identity", "'" + c.morphisms[lc].name + "' ∘ '" +
                                                   c.morphisms[f].name + "' != '" + c.morphisms[f].name + "'"});
    }
    for (int h = 0; h < m; ++h)
        for (int g = 0; g < m; ++g) {
            if (!c.composable(h, g)) continue;
            for (int f = 0; f < m; ++f) {
                if (!c.composable(g, f)) continue;
                const int hg = c.compose(h, g), gf = c.compose(g, f);
                if (hg < 0 || gf < 0) continue;
                if (c.compose(hg, f) != c.compose(h, gf))
                    rep.violations.push_back({"associativity", "('" + c.morphisms[h].name + "','" +
                                                                c.morphisms[g].name + "','" +
                                                                c.morphisms[f].name + "')"});
            }
        }
    return rep;
}

inline void check_size_guard(const FinCat& c, const std::string& who) {
    const std::size_t limit = size_guard_limit();
    if (c.num_morphisms() > limit)
        throw SizeGuardExceeded(who + ": category has " + std::to_string(c.num_morphisms()) +
                                " morphisms, bound is " + std::to_string(limit));
}

// A composable chain c_0 -> c_1 -> ... -> c_n.  Degree 0 stores the object
// only.  arrows[i] is the (i+1)-st arrow, so arrows front-to-back run from
// the chain's domain to its codomain.
struct NerveChain {
    int object = -1;          // degree-0 payload; for n >= 1 derived from arrows
    std::vector<int> arrows;

    std::size_t degree() const { return arrows.size(); }
    bool operator==(const NerveChain&) const = default;
    bool operator<(const NerveChain& o) const {
        if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
        if (arrows.empty()) return object < o.object;
        return arrows < o.arrows;
    }
};

inline int chain_dom(const FinCat& c, const NerveChain& ch) {
    return ch.arrows.empty() ? ch.object : c.morphisms[ch.arrows.front()].dom;
}
inline int chain_cod(const FinCat& c, const NerveChain& ch) {
    return ch.arrows.empty() ? ch.object : c.morphisms[ch.arrows.back()].cod;
}

// Composite arrow of a chain; the identity of the object in degree 0.
inline int chain_composite(const FinCat& c, const NerveChain& ch) {
    if (ch.arrows.empty()) return c.identity[ch.object];
    int acc = ch.arrows.front();
    for (std::size_t i = 1; i < ch.arrows.size(); ++i) acc = c.compose(ch.arrows[i], acc);
    return acc;
}

// All degree-n chains in lexicographic order of their arrow indices.
// Degenerate chains (those containing identities) are included unless
// `nondegenerate` is set.
inline std::vector<NerveChain> nerve(const FinCat& c, std::size_t n, bool nondegenerate = false) {
    check_size_guard(c, "nerve");
    std::vector<NerveChain> out;
    if (n == 0) {
        for (std::size_t o = 0; o < c.num_objects(); ++o) out.push_back({int(o), {}});
        return out;
    }
    NerveChain cur;
    cur.arrows.reserve(n);
    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
            if (nondegenerate && c.is_identity(int(f))) continue;
            if (depth > 0 && c.morphisms[cur.arrows.back()].cod != c.morphisms[f].dom) continue;
            cur.arrows.push_back(int(f));
            self(self, depth + 1);
            cur.arrows.pop_back();
        }
    };
    recurse(recurse, 0);
    return out;
}

// Index of a chain in the lexicographic enumeration, or -1.
inline int chain_index(const std::vector<NerveChain>& chains, const NerveChain& ch) {
    auto it = std::lower_bound(chains.begin(), chains.end(), ch);
    if (it == chains.end() || !(*it == ch)) return -1;
    return int(it - chains.begin());
}

// A functor between explicitly presented categories.
struct CatMap {
    std::vector<int> ob;  // source object -> target object
    std::vector<int> mor; // source morphism -> target morphism
};

inline ValidationReport validate_catmap(const FinCat& src, const FinCat& dst, const CatMap& F) {
    ValidationReport rep;
    if (F.ob.size() != src.num_objects() || F.mor.size() != src.num_morphisms()) {
        rep.violations.push_back({"structure", "map tables have wrong size"});
        return rep;
    }
    for (std::size_t f = 0; f < src.num_morphisms(); ++f) {
        const auto& m = src.morphisms[f];
        const auto& fm = dst.morphisms[F.mor[f]];
        if (fm.dom != F.ob[m.dom] || fm.cod != F.ob[m.cod])
            rep.violations.push_back({"structure", "endpoints not preserved at '" + m.name + "'"});
    }
    for (std::size_t o = 0; o < src.num_objects(); ++o)
        if (F.mor[src.identity[o]] != dst.identity[F.ob[o]])
            rep.violations.push_back({"structure", "identity not preserved at '" + src.objects[o] + "'"});
    for (std::size_t g = 0; g < src.num_morphisms(); ++g)
        for (std::size_t f = 0; f < src.num_morphisms(); ++f) {
            if (!src.composable(int(g), int(f))) continue;
            if (F.mor[src.compose(int(g), int(f))] != dst.compose(F.mor[g], F.mor[f]))
                rep.violations.push_back({"structure", "composition not preserved at ('" +
                                                        src.morphisms[g].name + "','" +
                                                        src.morphisms[f].name + "')"});
        }
    return rep;
}

inline FinCat opposite(const FinCat& c) {
    FinCat op = c;
    for (auto& m : op.morphisms) std::swap(m.dom, m.cod);
    const std::size_t n = c.num_morphisms();
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t f = 0; f < n; ++f)
            op.table[g * n + f] = c.table[f * n + g];
    return op;
}

// Product category; objects and morphisms ordered a-major.
inline FinCat product(const FinCat& a, const FinCat& b) {
    FinCatBuilder bld;
    for (std::size_t i = 0; i < a.num_objects(); ++i)
        for (std::size_t j = 0; j < b.num_objects(); ++j)
            bld.add_object("(" + a.objects[i] + "," + b.objects[j] + ")");
    const auto obj = [&](int i, int j) { return int(i * int(b.num_objects()) + j); };
    for (std::size_t f = 0; f < a.num_morphisms(); ++f)
        for (std::size_t g = 0; g < b.num_morphisms(); ++g) {
            const int idx = bld.add_morphism("(" + a.morphisms[f].name + "," + b.morphisms[g].name + ")",
                                             obj(a.morphisms[f].dom, b.morphisms[g].dom),
                                             obj(a.morphisms[f].cod, b.morphisms[g].cod));
            if (a.is_identity(int(f)) && b.is_identity(int(g)))
                bld.mark_identity(obj(a.morphisms[f].dom, b.morphisms[g].dom), idx);
        }
    const auto mor = [&](int f, int g) { return int(f * int(b.num_morphisms()) + g); };
    for (std::size_t f2 = 0; f2 < a.num_morphisms(); ++f2)
        for (std::size_t g2 = 0; g2 < b.num_morphisms(); ++g2)
            for (std::size_t f1 = 0; f1 < a.num_morphisms(); ++f1)
                for (std::size_t g1 = 0; g1 < b.num_morphisms(); ++g1) {
                    if (!a.composable(int(f2), int(f1)) || !b.composable(int(g2), int(g1))) continue;
                    bld.set_composite(mor(int(f2), int(g2)), mor(int(f1), int(g1)),
                                      mor(a.compose(int(f2), int(f1)), b.compose(int(g2), int(g1))));
                }
    return bld.finalize();
}

// The comma category c/C together with the projection Q_c.  Objects are the
// morphisms α: c -> a in morphism order; a morphism (a,α) -> (b,β) is a
// γ: a -> b with γ∘α = β.
struct CommaCat {
    FinCat cat;
    CatMap proj;                 // Q_c into the base
    std::vector<int> object_arrow; // comma object -> base morphism α
    int initial = -1;            // index of (c, 1_c)
};

inline CommaCat comma_under(const FinCat& c, int obj) {
    CommaCat out;
    FinCatBuilder bld;
    std::vector<int> arrows; // base morphisms out of obj
    for (std::size_t f = 0; f < c.num_morphisms(); ++f)
        if (c.morphisms[f].dom == obj) {
            arrows.push_back(int(f));
            bld.add_object("(" + c.objects[c.morphisms[f].cod] + "|" + c.morphisms[f].name + ")");
        }
    const auto comma_obj = [&](int alpha) {
        for (std::size_t k = 0; k < arrows.size(); ++k)
            if (arrows[k] == alpha) return int(k);
        return -1;
    };
    struct Tri {
        int gamma, src, dst;
    };
    std::vector<Tri> tris;
    for (std::size_t i = 0; i < arrows.size(); ++i)
        for (std::size_t j = 0; j < arrows.size(); ++j)
            for (std::size_t g = 0; g < c.num_morphisms(); ++g) {
                if (c.morphisms[g].dom != c.morphisms[arrows[i]].cod) continue;
                if (c.compose(int(g), arrows[i]) != arrows[j]) continue;
                const int idx = bld.add_morphism(c.morphisms[g].name + "[" + std::to_string(i) +
                                                     "->" + std::to_string(j) + "]",
                                                 int(i), int(j));
                tris.push_back({int(g), int(i), int(j)});
                if (i == j && c.is_identity(int(g))) bld.mark_identity(int(i), idx);
            }
    const auto comma_mor = [&](int gamma, int src, int dst) {
        for (std::size_t k = 0; k < tris.size(); ++k)
            if (tris[k].gamma == gamma && tris[k].src == src && tris[k].dst == dst) return int(k);
        return -1;
    };
    for (std::size_t k2 = 0; k2 < tris.size(); ++k2)
        for (std::size_t k1 = 0; k1 < tris.size(); ++k1) {
            if (tris[k1].dst != tris[k2].src) continue;
            const int g = c.compose(tris[k2].gamma, tris[k1].gamma);
            bld.set_composite(int(k2), int(k1), comma_mor(g, tris[k1].src, tris[k2].dst));
        }
    out.cat = bld.finalize();
    out.object_arrow = arrows;
    out.proj.ob.resize(arrows.size());
    for (std::size_t k = 0; k < arrows.size(); ++k)
        out.proj.ob[k] = c.morphisms[arrows[k]].cod;
    out.proj.mor.resize(tris.size());
    for (std::size_t k = 0; k < tris.size(); ++k) out.proj.mor[k] = tris[k].gamma;
    out.initial = comma_obj(c.identity[obj]);
    return out;
}

// The factorization category C'.  Objects are the morphisms of C in input
// order; a morphism f -> g is a pair (α, β) with β∘f∘α = g, composed by
// (α2,β2)∘(α1,β1) = (α1∘α2, β2∘β1).
struct FactCat {
    FinCat cat;
    std::vector<std::pair<int, int>> pair_of; // C' morphism -> (α, β) in the base
    std::vector<std::pair<int, int>> ends;    // C' morphism -> (f, g) objects
    std::map<std::array<int, 4>, int> index;  // (f, g, α, β) -> C' morphism

    int find(int f, int g, int alpha, int beta) const {
        auto it = index.find({f, g, alpha, beta});
        return it == index.end() ? -1 : it->second;
    }
};

inline FactCat factorization(const FinCat& c) {
    check_size_guard(c, "factorization");
    FactCat out;
    FinCatBuilder bld;
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) bld.add_object(c.morphisms[f].name);
    for (std::size_t f = 0; f < c.num_morphisms(); ++f)
        for (std::size_t g = 0; g < c.num_morphisms(); ++g)
            for (std::size_t al = 0; al < c.num_morphisms(); ++al) {
                // α: dom g -> dom f
                if (c.morphisms[al].dom != c.morphisms[g].dom) continue;
                if (c.morphisms[al].cod != c.morphisms[f].dom) continue;
                for (std::size_t be = 0; be < c.num_morphisms(); ++be) {
                    // β: cod f -> cod g
                    if (c.morphisms[be].dom != c.morphisms[f].cod) continue;
                    if (c.morphisms[be].cod != c.morphisms[g].cod) continue;
                    if (c.compose(int(be), c.compose(int(f), int(al))) != int(g)) continue;
                    const int idx = bld.add_morphism("(" + c.morphisms[al].name + "," +
                                                         c.morphisms[be].name + "):" +
                                                         c.morphisms[f].name + "->" +
                                                         c.morphisms[g].name,
                                                     int(f), int(g));
                    out.pair_of.push_back({int(al), int(be)});
                    out.ends.push_back({int(f), int(g)});
                    out.index[{int(f), int(g), int(al), int(be)}] = idx;
                    if (f == g && c.is_identity(int(al)) && c.is_identity(int(be)))
                        bld.mark_identity(int(f), idx);
                }
            }
    for (std::size_t k2 = 0; k2 < out.pair_of.size(); ++k2)
        for (std::size_t k1 = 0; k1 < out.pair_of.size(); ++k1) {
            if (out.ends[k1].second != out.ends[k2].first) continue;
            const int alpha = c.compose(out.pair_of[k1].first, out.pair_of[k2].first);
            const int beta = c.compose(out.pair_of[k2].second, out.pair_of[k1].second);
            bld.set_composite(int(k2), int(k1),
                              out.find(out.ends[k1].first, out.ends[k2].second, alpha, beta));
        }
    out.cat = bld.finalize();
    return out;
}

// The functor (dom, cod): C' -> C^op × C, materialized against product(opposite(c), c).
inline CatMap domcod_functor(const FinCat& c, const FactCat& fact) {
    CatMap F;
    const int nm = int(c.num_morphisms());
    F.ob.resize(fact.cat.num_objects());
    for (std::size_t f = 0; f < fact.cat.num_objects(); ++f)
        F.ob[f] = c.morphisms[f].dom * int(c.num_objects()) + c.morphisms[f].cod;
    F.mor.resize(fact.cat.num_morphisms());
    for (std::size_t k = 0; k < fact.cat.num_morphisms(); ++k)
        F.mor[k] = fact.pair_of[k].first * nm + fact.pair_of[k].second;
    return F;
}

// Relabel the morphism order: new index k holds old morphism perm[k].
inline FinCat permute_morphisms(const FinCat& c, const std::vector<int>& perm) {
    const std::size_t n = c.num_morphisms();
    if (perm.size() != n) throw Error("permute_morphisms: bad permutation");
    std::vector<int> inv(n, -1);
    for (std::size_t k = 0; k < n; ++k) inv[perm[k]] = int(k);
    FinCat out;
    out.objects = c.objects;
    out.morphisms.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.morphisms[k] = c.morphisms[perm[k]];
    out.identity.resize(c.num_objects());
    for (std::size_t o = 0; o < c.num_objects(); ++o) out.identity[o] = inv[c.identity[o]];
    out.table.assign(n * n, -1);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t f = 0; f < n; ++f) {
            const int gf = c.compose(perm[g], perm[f]);
            out.table[g * n + f] = gf < 0 ? -1 : inv[gf];
        }
    return out;
}

} // namespace catext
