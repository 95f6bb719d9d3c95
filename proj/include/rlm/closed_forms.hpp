#pragma once

// Closed-form tables for type-(n-1,1) index sets, n = 2m+1 odd.  Index sets are
// written S(i, j) = {1..n} \ {j} ∪ {n+i}.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exterior.hpp"
#include "field.hpp"
#include "index_set.hpp"

namespace rlm {

struct TypeN1 {
    int i = 0;  // S ∩ {n+1..2n} = {n+i}
    int j = 0;  // {1..n} \ S = {j}
};

inline IndexSet type_n1_set(int n, int i, int j) {
    return IndexSet::range(n, 1, n).without(j).with(n + i);
}

inline TypeN1 decode_type_n1(const IndexSet& S) {
    int n = S.rank();
    if (S.size() != n || S.type() != TypePair{n - 1, 1}) throw std::invalid_argument("not of type (n-1,1): " + S.to_string());
    TypeN1 t;
    for (int a = 1; a <= n; ++a)
        if (!S.contains(a)) t.j = a;
    for (int a = n + 1; a <= 2 * n; ++a)
        if (S.contains(a)) t.i = a - n;
    return t;
}

/// S ≼ S⊥ for type (n-1,1): compare the unique element above n.
inline bool precedes_perp(const IndexSet& S) {
    auto t = decode_type_n1(S);
    return t.i <= dual_index(S.rank(), t.j);
}

/// {n+1..2n} \ {drop} ∪ {add}; add = 0 or drop = 0 mean "nothing".
inline IndexSet top_half_variant(int n, int add, int drop) {
    auto T = IndexSet::range(n, n + 1, 2 * n);
    if (drop) T = T.without(drop);
    if (add) T = T.with(add);
    return T;
}

/// Which of the six cases of the WT(g_S) table applies.
inline int six_case(int n, int i, int j) {
    int m = n / 2;
    if (i == j) return i < m + 1 ? 1 : 2;
    if (i < m + 1 && j < m + 1) return 3;
    if (i < m + 1) return 4;
    if (j < m + 1) return 5;
    return 6;
}

/// Which of the nine cases applies to S(i, j) with S ≼ S⊥.  0 if none (should not happen).
inline int nine_case(int n, int i, int j) {
    int m = n / 2, jv = dual_index(n, j);
    if (i > jv) return 0;
    if (j == dual_index(n, i)) {
        if (i == m + 1) return 1;
        return i < m + 1 ? 2 : 3;
    }
    if (j == i) return i < m + 1 ? 4 : 0;
    if (jv < m + 1) return 5;
    if (j == m + 1) return i < m + 1 ? 6 : 0;
    if (i < m + 1 && m + 1 < jv) return 7;
    if (i == m + 1 && m + 1 < jv) return 8;
    if (m + 1 < i && i < jv) return 9;
    return 0;
}

/// The nine individual predicates, evaluated independently of nine_case so the
/// drivers can confirm that exactly one fires.
inline std::vector<bool> nine_case_predicates(int n, int i, int j) {
    int m = n / 2, jv = dual_index(n, j), iv = dual_index(n, i);
    return {
        i == m + 1 && j == m + 1,
        i < m + 1 && j == iv,
        i > m + 1 && j == iv,
        i < m + 1 && j == i,
        i < jv && jv < m + 1,
        j == m + 1 && i < m + 1,
        i < m + 1 && m + 1 < jv && j != i,
        i == m + 1 && m + 1 < jv,
        m + 1 < i && i < jv,
    };
}

/// Valuation shift c_S making π^{c_S}(g_S - sgn g_{S⊥}) primitive, by case.
inline int scaled_generator_exponent(int n, int nine) {
    int m = n / 2;
    static const int delta[10] = {0, 1, -1, 1, 0, -1, 0, 0, 1, 1};
    if (nine < 1 || nine > 9) throw std::invalid_argument("bad case");
    return m + delta[nine];
}

template <BaseField F>
using LaurentWedge = WedgeVector<PiLaurent<typename F::element_type>>;

namespace detail {
template <BaseField F>
LaurentWedge<F> single_term(const F& k, int n, const IndexSet& S, int e, typename F::element_type c) {
    LaurentWedge<F> w{n, n, BasisTag::e_basis, {}};
    (void)k;
    w.add(S, PiLaurent<typename F::element_type>::monomial(e, c));
    return w;
}
}  // namespace detail

/// Closed form of WT(g_S) for S of type (n-1,1), e-basis.
template <BaseField F>
LaurentWedge<F> closed_wt_g(const F& k, const IndexSet& S) {
    int n = S.rank(), m = n / 2;
    auto [i, j] = decode_type_n1(S);
    auto sg = [&](int e) { return sign_power(k, e); };
    auto target = top_half_variant(n, i, n + j);
    switch (six_case(n, i, j)) {
        case 1: return detail::single_term(k, n, top_half_variant(n, 0, 0), -(m + 1), sg(i + m) * k.half());
        case 2: return detail::single_term(k, n, top_half_variant(n, 0, 0), -(m + 1), sg(i + m + 1) * k.half());
        case 3: return detail::single_term(k, n, target, -m, sg(m + 1));
        case 4: return detail::single_term(k, n, target, -(m - 1), sg(m));
        case 5: return detail::single_term(k, n, target, -(m + 1), sg(m + 1));
        default: return detail::single_term(k, n, target, -m, sg(m));
    }
}

/// Closed form of WT(g_S - sgn(σ_S) g_{S⊥}) for S of type (n-1,1) with S ≼ S⊥.
template <BaseField F>
LaurentWedge<F> closed_wt_pair(const F& k, const IndexSet& S) {
    using K = typename F::element_type;
    int n = S.rank(), m = n / 2;
    auto [i, j] = decode_type_n1(S);
    int jv = dual_index(n, j), iv = dual_index(n, i), istar = star_index(n, i);
    auto sg = [&](int e) { return sign_power(k, e); };
    auto two = k(2);
    LaurentWedge<F> w{n, n, BasisTag::e_basis, {}};
    auto put = [&](const IndexSet& T, int e, const K& c) { w.add(T, PiLaurent<K>::monomial(e, c)); };
    switch (nine_case(n, i, j)) {
        case 1: put(top_half_variant(n, 0, 0), -(m + 1), k.one()); break;
        case 2: put(top_half_variant(n, i, istar), -(m - 1), two * sg(m)); break;
        case 3: put(top_half_variant(n, i, istar), -(m + 1), two * sg(m + 1)); break;
        case 4:
            put(top_half_variant(n, i, n + i), -m, sg(m + 1));
            put(top_half_variant(n, iv, istar), -m, -sg(m + 1));
            break;
        case 5:
            put(top_half_variant(n, i, n + j), -(m - 1), sg(m));
            put(top_half_variant(n, jv, istar), -(m - 1), sg(m) * sg(i + j));
            break;
        case 6: put(top_half_variant(n, m + 1, istar), -m, sg(i + 1)); break;
        case 7:
            put(top_half_variant(n, i, n + j), -m, sg(m + 1));
            put(top_half_variant(n, jv, istar), -m, sg(m + 1) * sg(i + j + 1));
            break;
        case 8: put(top_half_variant(n, m + 1, n + j), -(m + 1), sg(m + 1)); break;
        case 9:
            put(top_half_variant(n, i, n + j), -(m + 1), sg(m + 1));
            put(top_half_variant(n, jv, istar), -(m + 1), sg(m + 1) * sg(i + j));
            break;
        default: throw std::invalid_argument("no case applies to " + S.to_string());
    }
    return w;
}

/// Sparse residue vector over k in e-coordinates.
template <FieldElement K>
using ResidueVector = std::map<IndexSet, K>;

template <FieldElement K>
void residue_add(ResidueVector<K>& v, const IndexSet& S, const K& c) {
    if (c.is_zero()) return;
    auto [it, ins] = v.try_emplace(S, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

struct FamilyMember {
    int family = 0;  // 1..6
    std::string label;
};

/// The six families spanning the residue image of W(Λ_m)^{n-1,1}_{-1}.
template <BaseField F>
std::vector<std::pair<FamilyMember, ResidueVector<typename F::element_type>>> corollary_families(const F& k, int n) {
    using K = typename F::element_type;
    int m = n / 2;
    std::vector<std::pair<FamilyMember, ResidueVector<K>>> out;
    auto emit = [&](int fam, std::string label, std::vector<std::pair<IndexSet, K>> terms) {
        ResidueVector<K> v;
        for (auto& [S, c] : terms) residue_add(v, S, c);
        out.push_back({FamilyMember{fam, std::move(label)}, std::move(v)});
    };
    auto tag = [](int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };
    emit(1, "top", {{top_half_variant(n, 0, 0), k.one()}});
    for (int i = 1; i <= n; ++i)
        if (i != m + 1) emit(2, "i=" + std::to_string(i), {{top_half_variant(n, i, star_index(n, i)), k.one()}});
    for (int i = 1; i < m + 1; ++i)
        emit(3, "i=" + std::to_string(i),
             {{top_half_variant(n, i, n + i), k.one()},
              {top_half_variant(n, dual_index(n, i), star_index(n, i)), -k.one()}});
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            int jv = dual_index(n, j);
            bool low = i < jv && jv < m + 1;
            bool high = m + 1 < i && i < jv && jv <= n;
            if (low || high)
                emit(4, tag(i, j),
                     {{top_half_variant(n, i, n + j), k.one()},
                      {top_half_variant(n, jv, star_index(n, i)), sign_power(k, i + j)}});
        }
    for (int i = 1; i <= n; ++i)
        if (i != m + 1) emit(5, "i=" + std::to_string(i), {{top_half_variant(n, m + 1, n + i), k.one()}});
    for (int i = 1; i < m + 1; ++i)
        for (int j = 1; j <= n; ++j) {
            int jv = dual_index(n, j);
            if (m + 1 < jv && jv <= n && j != i)
                emit(6, tag(i, j),
                     {{top_half_variant(n, i, n + j), k.one()},
                      {top_half_variant(n, jv, star_index(n, i)), sign_power(k, i + j + 1)}});
        }
    return out;
}

/// Elements asserted to lie in N_ε for both ε.
template <BaseField F>
std::vector<ResidueVector<typename F::element_type>> n_lemma_elements(const F& k, int n) {
    int m = n / 2;
    std::vector<ResidueVector<typename F::element_type>> out;
    out.push_back({{top_half_variant(n, 0, 0), k.one()}});
    for (int i = 1; i <= n; ++i)
        if (i != m + 1) out.push_back({{top_half_variant(n, i, n + i), k.one()}});
    return out;
}

/// e-coordinate whose chart coefficient is (-1)^m X_4.
inline IndexSet x4_detecting_set(int n) {
    int m = n / 2;
    return top_half_variant(n, m + 1, n + m + 1);
}

}  // namespace rlm
