#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "closed_forms.hpp"
#include "errors.hpp"
#include "exterior.hpp"
#include "pi_laurent.hpp"

namespace rlm {

inline constexpr int kDefaultPrecision = 24;
inline constexpr int kGuardBand = 4;

enum class LatticeKind { spin, refined, kl };

inline std::string to_string(LatticeKind k) {
    switch (k) {
        case LatticeKind::spin: return "spin";
        case LatticeKind::refined: return "refined";
        case LatticeKind::kl: return "kl";
    }
    return "?";
}

/// Parameters naming one of the lattices W(Λ_m)_ε, W(Λ_m)^{r,s}_ε, ^lW(Λ_m)^{r,s}.
struct LatticeSpec {
    LatticeKind kind = LatticeKind::spin;
    int n = 3;
    int eps = 1;  // spin, refined
    int r = 0, s = 0;  // refined, kl
    int l = 0;  // kl

    static LatticeSpec spin(int n, int eps) { return {LatticeKind::spin, n, eps, 0, 0, n}; }
    static LatticeSpec refined(int n, int eps, int r, int s) { return {LatticeKind::refined, n, eps, r, s, n}; }
    static LatticeSpec kl(int n, int l, int r, int s) { return {LatticeKind::kl, n, 1, r, s, l}; }

    int degree() const { return kind == LatticeKind::kl ? l : n; }

    void validate() const {
        if (n < 2 || n > kMaxRank) throw std::invalid_argument("rank out of range");
        if (kind != LatticeKind::kl && eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
        if (kind != LatticeKind::spin && (r < 0 || s < 0 || r + s != n)) throw std::invalid_argument("signature must satisfy r + s = n");
        if (kind == LatticeKind::kl && (l < 1 || l > n)) throw std::invalid_argument("l must lie in 1..n");
    }

    std::string to_string() const {
        switch (kind) {
            case LatticeKind::spin: return "spin(eps=" + std::to_string(eps) + ")";
            case LatticeKind::refined:
                return "refined(eps=" + std::to_string(eps) + ",r=" + std::to_string(r) + ",s=" + std::to_string(s) + ")";
            case LatticeKind::kl:
                return "kl(l=" + std::to_string(l) + ",r=" + std::to_string(r) + ",s=" + std::to_string(s) + ")";
        }
        return "?";
    }
};

/// Caches frames and wedges of frame vectors in e-coordinates for one rank.
template <BaseField F>
class WedgeFactory {
public:
    using K = typename F::element_type;
    using W = WedgeVector<PiLaurent<K>>;

    WedgeFactory(const F& k, int n)
        : k_(k), n_(n), lambda_(build_frame(k, FrameKind::lambda, n)),
          f_(build_frame(k, FrameKind::f_split, n)), g_(build_frame(k, FrameKind::g_split, n)) {}

    const F& field() const { return k_; }
    int rank() const { return n_; }
    const Frame<K>& lambda() const { return lambda_; }
    const Frame<K>& f_frame() const { return f_; }
    const Frame<K>& g_frame() const { return g_; }

    /// Wedge of frame vectors indexed by S, in e-coordinates.
    W e_wedge(FrameKind kind, const IndexSet& S) const {
        const auto& fr = kind == FrameKind::f_split ? f_ : (kind == FrameKind::g_split ? g_ : lambda_);
        return change_wedge_basis(lambda_, basis_wedge(fr, S), BasisTag::e_basis);
    }

    W f_e(const IndexSet& S) const { return e_wedge(FrameKind::f_split, S); }
    W g_e(const IndexSet& S) const { return e_wedge(FrameKind::g_split, S); }

private:
    F k_;
    int n_;
    Frame<K> lambda_, f_, g_;
};

/// v + c·sgn(σ_S)·w
template <class W>
W signed_combination(const W& v, const W& w, int sign) {
    return sign > 0 ? v + w : v - w;
}

/// F-spanning set of the named subspace, in e-coordinates.
template <BaseField F>
std::vector<WedgeVector<PiLaurent<typename F::element_type>>> spanning_set(const WedgeFactory<F>& fac,
                                                                         const LatticeSpec& spec) {
    spec.validate();
    int n = fac.rank();
    if (spec.n != n) throw std::invalid_argument("rank mismatch");
    std::vector<WedgeVector<PiLaurent<typename F::element_type>>> gens;
    auto eigen_pairs = [&](FrameKind frame, auto&& accept) {
        for (auto& S : enumerate_subsets(n, n)) {
            if (!accept(S)) continue;
            auto P = S.perp();
            if (P < S) continue;
            int sign = spec.eps * sigma_sign_closed(S);
            auto v = fac.e_wedge(frame, S);
            auto g = signed_combination(v, P == S ? v : fac.e_wedge(frame, P), sign);
            if (!g.is_zero()) gens.push_back(std::move(g));
        }
    };
    switch (spec.kind) {
        case LatticeKind::spin: eigen_pairs(FrameKind::f_split, [](const IndexSet&) { return true; }); break;
        case LatticeKind::refined:
            eigen_pairs(FrameKind::g_split, [&](const IndexSet& S) { return S.type() == TypePair{spec.r, spec.s}; });
            break;
        case LatticeKind::kl:
            for (auto& T : enumerate_subsets(n, spec.l)) {
                auto t = T.type();
                if (t.r <= spec.r && t.s <= spec.s) gens.push_back(fac.g_e(T));
            }
            break;
    }
    return gens;
}

/// A column of a lattice basis: entries known modulo π^precision.
template <FieldElement K>
struct LatticeColumn {
    std::map<IndexSet, PiLaurent<K>> terms;
    int precision = kInfOrd;
    IndexSet pivot;
    int pivot_valuation = 0;

    int min_valuation() const {
        int v = kInfOrd;
        for (auto& [S, c] : terms) v = std::min(v, c.ord());
        return v;
    }
};

template <FieldElement K>
struct DVRTriangularBasis {
    int n = 0;
    int degree = 0;
    int precision = kDefaultPrecision;
    std::vector<LatticeColumn<K>> columns;
};

namespace detail {

template <FieldElement K>
void truncate_column(LatticeColumn<K>& c) {
    if (c.precision == kInfOrd) return;
    for (auto it = c.terms.begin(); it != c.terms.end();) {
        it->second = it->second.truncated(c.precision);
        if (it->second.is_zero())
            it = c.terms.erase(it);
        else
            ++it;
    }
}

/// Scale to minimum valuation 0.  Returns false for an exact zero column.
template <FieldElement K>
bool normalize_column(LatticeColumn<K>& c) {
    if (c.terms.empty()) {
        if (c.precision == kInfOrd) return false;
        throw PrecisionError("column vanishes to working precision " + std::to_string(c.precision));
    }
    int v = c.min_valuation();
    if (v != 0) {
        for (auto& [S, x] : c.terms) x = x.shifted(-v);
        if (c.precision != kInfOrd) c.precision -= v;
    }
    if (c.precision != kInfOrd && c.precision <= kGuardBand)
        throw PrecisionError("pivot within guard band: precision " + std::to_string(c.precision));
    return true;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

template <FieldElement K>
void reduce_block(std::vector<LatticeColumn<K>> cols, int precision, std::vector<LatticeColumn<K>>& out) {
    std::vector<LatticeColumn<K>> rem;
    for (auto& c : cols)
        if (normalize_column(c)) rem.push_back(std::move(c));
    while (!rem.empty()) {
        // lexicographically least valuation-0 coordinate, then earliest column
        std::size_t best = 0;
        std::optional<IndexSet> piv;
        for (std::size_t a = 0; a < rem.size(); ++a)
            for (auto& [S, x] : rem[a].terms)
                if (x.ord() == 0) {
                    if (!piv || S < *piv) {
                        piv = S;
                        best = a;
                    }
                    break;  // terms are sorted, the first valuation-0 entry is this column's least
                }
        auto p = std::move(rem[best]);
        rem.erase(rem.begin() + static_cast<long>(best));
        p.pivot = *piv;
        p.pivot_valuation = 0;
        const auto& u = p.terms.at(*piv);
        auto uinv = truncated_inverse(u, precision);
        std::vector<LatticeColumn<K>> next;
        for (auto& c : rem) {
            auto it = c.terms.find(*piv);
            if (it != c.terms.end()) {
                PiSeries<K> x(it->second, c.precision);
                auto q = x * uinv;
                int prec = c.precision;
                for (auto& [S, y] : p.terms) {
                    auto prod = q * PiSeries<K>(y, p.precision);
                    prec = std::min(prec, prod.precision());
                    c.terms[S] -= prod.body();
                }
                c.precision = prec;
                c.terms.erase(*piv);
                std::erase_if(c.terms, [](auto& kv) { return kv.second.is_zero(); });
                truncate_column(c);
            }
            if (normalize_column(c)) next.push_back(std::move(c));
        }
        rem = std::move(next);
        out.push_back(std::move(p));
    }
}

}  // namespace detail

/// O_F-basis of (F-span of generators) ∩ W(Λ_m) by π-adic column echelon.
/// Generators with disjoint supports are reduced independently.
template <FieldElement K>
DVRTriangularBasis<K> intersect_with_standard_lattice(const std::vector<WedgeVector<PiLaurent<K>>>& gens,
                                                      int precision = kDefaultPrecision) {
    if (precision <= kGuardBand) throw PrecisionError("precision must exceed the guard band");
    DVRTriangularBasis<K> out;
    out.precision = precision;
    if (!gens.empty()) {
        out.n = gens.front().n;
        out.degree = gens.front().degree;
    }
    std::map<IndexSet, int> coord;
    std::vector<const WedgeVector<PiLaurent<K>>*> live;
    for (auto& g : gens) {
        if (g.tag != BasisTag::e_basis) throw std::invalid_argument("generators must be in e-coordinates");
        if (g.is_zero()) continue;
        live.push_back(&g);
        for (auto& [S, c] : g.terms) coord.try_emplace(S, static_cast<int>(coord.size()));
    }
    detail::UnionFind uf(static_cast<int>(coord.size()));
    for (auto* g : live) {
        int first = coord.at(g->terms.begin()->first);
        for (auto& [S, c] : g->terms) uf.unite(first, coord.at(S));
    }
    // blocks keyed by their least coordinate so the output order is deterministic
    std::map<IndexSet, std::vector<LatticeColumn<K>>> blocks;
    std::map<int, IndexSet> root_key;
    for (auto& [S, idx] : coord) root_key.try_emplace(uf.find(idx), S);
    for (auto* g : live) {
        LatticeColumn<K> c;
        c.terms.insert(g->terms.begin(), g->terms.end());
        blocks[root_key.at(uf.find(coord.at(g->terms.begin()->first)))].push_back(std::move(c));
    }
    for (auto& [key, cols] : blocks) detail::reduce_block(std::move(cols), precision, out.columns);
    return out;
}

/// Reduction π -> 0 of each basis column.
template <FieldElement K>
std::vector<ResidueVector<K>> reduce_mod_pi(const DVRTriangularBasis<K>& b) {
    std::vector<ResidueVector<K>> out;
    for (auto& c : b.columns) {
        ResidueVector<K> v;
        for (auto& [S, x] : c.terms) {
            if (x.ord() < 0) throw std::logic_error("lattice column is not integral");
            residue_add(v, S, x.coeff(0));
        }
        if (!v.empty()) out.push_back(std::move(v));
    }
    return out;
}

/// Reduced row echelon form of a list of residue vectors; pivots are least coordinates.
template <FieldElement K>
struct ResidueEchelon {
    std::vector<IndexSet> pivots;
    std::vector<ResidueVector<K>> rows;  // rows[i][pivots[i]] == 1, zero at other pivots

    int rank() const { return static_cast<int>(rows.size()); }

    /// Reduces v against the echelon rows; the result is zero iff v is in the span.
    ResidueVector<K> reduce(ResidueVector<K> v) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto it = v.find(pivots[i]);
            if (it == v.end()) continue;
            K c = it->second;
            for (auto& [S, x] : rows[i]) residue_add(v, S, -(c * x));
        }
        return v;
    }

    bool contains(const ResidueVector<K>& v) const { return reduce(v).empty(); }

    /// Adds v; returns false if it was already in the span.
    bool insert(const ResidueVector<K>& v0) {
        auto v = reduce(v0);
        if (v.empty()) return false;
        IndexSet p = v.begin()->first;
        K inv = v.begin()->second.inv();
        for (auto& [S, x] : v) x = inv * x;
        for (auto& r : rows) {
            auto it = r.find(p);
            if (it == r.end()) continue;
            K c = it->second;
            for (auto& [S, x] : v) residue_add(r, S, -(c * x));
        }
        // keep rows sorted by pivot
        auto pos = std::lower_bound(pivots.begin(), pivots.end(), p) - pivots.begin();
        pivots.insert(pivots.begin() + pos, p);
        rows.insert(rows.begin() + pos, std::move(v));
        return true;
    }
};

template <FieldElement K>
ResidueEchelon<K> echelon(const std::vector<ResidueVector<K>>& vs) {
    ResidueEchelon<K> e;
    for (auto& v : vs) e.insert(v);
    return e;
}

/// k-linear functional on e-coordinates: value(w) = w[coord] - Σ c·w[pivot].
template <FieldElement K>
struct Functional {
    IndexSet coord;
    std::vector<std::pair<IndexSet, K>> pivot_terms;
};

template <FieldElement K>
struct AnnihilatorSet {
    int n = 0;
    int degree = 0;
    int tracked = 0;  // number of coordinates in the tracked space
    std::vector<Functional<K>> functionals;
};

/// Functionals cutting out span(rb) inside the space of all degree-l e-coordinates.
template <FieldElement K>
AnnihilatorSet<K> annihilators(const std::vector<ResidueVector<K>>& rb, int n, int degree) {
    auto ech = echelon(rb);
    AnnihilatorSet<K> out;
    out.n = n;
    out.degree = degree;
    std::map<IndexSet, int> pivot_row;
    for (int i = 0; i < ech.rank(); ++i) pivot_row[ech.pivots[i]] = i;
    auto all = enumerate_subsets(n, degree);
    out.tracked = static_cast<int>(all.size());
    // column view: for each non-pivot coordinate, which rows touch it
    std::map<IndexSet, std::vector<std::pair<IndexSet, K>>> touch;
    for (int i = 0; i < ech.rank(); ++i)
        for (auto& [S, x] : ech.rows[i])
            if (S != ech.pivots[i]) touch[S].push_back({ech.pivots[i], x});
    for (auto& S : all) {
        if (pivot_row.count(S)) continue;
        Functional<K> f;
        f.coord = S;
        if (auto it = touch.find(S); it != touch.end()) f.pivot_terms = it->second;
        out.functionals.push_back(std::move(f));
    }
    return out;
}

template <class R>
struct MembershipResult {
    bool pass = true;
    std::optional<IndexSet> witness;  // coordinate of the failing functional
    R value{};
};

/// Evaluates every functional on w (coefficients in any k-algebra R).
template <FieldElement K, class R>
MembershipResult<R> membership_over_R(const WedgeVector<R>& w, const AnnihilatorSet<K>& ann) {
    if (w.tag != BasisTag::e_basis) throw std::invalid_argument("membership needs e-coordinates");
    if (w.n != ann.n || w.degree != ann.degree) throw std::invalid_argument("coordinate space mismatch");
    MembershipResult<R> res;
    for (auto& f : ann.functionals) {
        R v = w.coeff(f.coord);
        for (auto& [P, c] : f.pivot_terms) {
            auto it = w.terms.find(P);
            if (it != w.terms.end()) v = v - scale(c, it->second);
        }
        if (!v.is_zero()) {
            res.pass = false;
            res.witness = f.coord;
            res.value = v;
            return res;
        }
    }
    return res;
}

/// Everything derived from one lattice: basis, residue basis, annihilators.
template <FieldElement K>
struct LatticeData {
    LatticeSpec spec;
    int generator_count = 0;
    DVRTriangularBasis<K> basis;
    std::vector<ResidueVector<K>> residue;
    AnnihilatorSet<K> ann;
};

template <BaseField F>
LatticeData<typename F::element_type> compute_lattice(const WedgeFactory<F>& fac, const LatticeSpec& spec,
                                                      int precision = kDefaultPrecision) {
    LatticeData<typename F::element_type> d;
    d.spec = spec;
    auto gens = spanning_set(fac, spec);
    d.generator_count = static_cast<int>(gens.size());
    d.basis = intersect_with_standard_lattice(gens, precision);
    d.basis.n = spec.n;
    d.basis.degree = spec.degree();
    d.residue = reduce_mod_pi(d.basis);
    d.ann = annihilators(d.residue, spec.n, spec.degree());
    return d;
}

// ---------------------------------------------------------------------------
// Independent lattice oracle: F-linear solve with pivoting on least valuation.

/// Coordinates a with Σ a_i B_i = v, or nullopt if v is outside the F-span.
/// B must be F-linearly independent.
template <FieldElement K>
std::optional<std::vector<PiSeries<K>>> solve_in_span(const std::vector<std::map<IndexSet, PiLaurent<K>>>& B,
                                                      const std::map<IndexSet, PiLaurent<K>>& v, int precision) {
    std::map<IndexSet, int> rowid;
    for (auto& b : B)
        for (auto& [S, c] : b) rowid.try_emplace(S, 0);
    for (auto& [S, c] : v) rowid.try_emplace(S, 0);
    int r = 0;
    for (auto& [S, id] : rowid) id = r++;
    int ncols = static_cast<int>(B.size());
    // augmented dense matrix
    std::vector<std::vector<PiSeries<K>>> M(r, std::vector<PiSeries<K>>(ncols + 1));
    for (int j = 0; j < ncols; ++j)
        for (auto& [S, c] : B[j]) M[rowid[S]][j] = PiSeries<K>(c);
    for (auto& [S, c] : v) M[rowid[S]][ncols] = PiSeries<K>(c);

    std::vector<int> pivot_row_of(ncols, -1);
    std::vector<bool> used(r, false);
    for (int j = 0; j < ncols; ++j) {
        int best = -1, bv = kInfOrd;
        for (int i = 0; i < r; ++i) {
            if (used[i] || M[i][j].body_zero()) continue;
            int o = M[i][j].ord();
            if (o < bv) bv = o, best = i;
        }
        if (best < 0) throw PrecisionError("column dependent or undecidable in span solve");
        used[best] = true;
        pivot_row_of[j] = best;
        auto inv = truncated_inverse(M[best][j].body(), precision);
        if (!M[best][j].exact()) inv = PiSeries<K>(inv.body(), std::min(inv.precision(), M[best][j].precision() - 2 * bv));
        for (int c = j; c <= ncols; ++c) M[best][c] = M[best][c] * inv;
        for (int i = 0; i < r; ++i) {
            if (i == best || M[i][j].body_zero()) continue;
            auto f = M[i][j];
            for (int c = j; c <= ncols; ++c)
                if (!M[best][c].body_zero() || !M[best][c].exact()) M[i][c] = M[i][c] - f * M[best][c];
            M[i][j] = PiSeries<K>();
        }
    }
    for (int i = 0; i < r; ++i)
        if (!used[i] && !M[i][ncols].body_zero()) return std::nullopt;
    std::vector<PiSeries<K>> a(ncols);
    for (int j = 0; j < ncols; ++j) a[j] = M[pivot_row_of[j]][ncols];
    return a;
}

/// True if every vector of `sub` lies in the O_F-span of `lat` (lat independent).
template <FieldElement K>
bool lattice_contains_all(const std::vector<std::map<IndexSet, PiLaurent<K>>>& lat,
                          const std::vector<std::map<IndexSet, PiLaurent<K>>>& sub, int precision) {
    for (auto& v : sub) {
        auto a = solve_in_span(lat, v, precision);
        if (!a) return false;
        for (auto& x : *a)
            if (!x.body_zero() && x.body().ord() < 0) return false;
    }
    return true;
}

}  // namespace rlm
