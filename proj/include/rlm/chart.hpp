#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "closed_forms.hpp"
#include "exterior.hpp"
#include "lattice.hpp"
#include "rings.hpp"

namespace rlm {

enum class RingKind { field, dual, poly };

inline std::string to_string(RingKind k) {
    switch (k) {
        case RingKind::field: return "field";
        case RingKind::dual: return "dual";
        case RingKind::poly: return "poly";
    }
    return "?";
}

/// The base field k itself.
template <BaseField F>
struct FieldRing {
    using field_type = F;
    using element = typename F::element_type;
    F k;
    static constexpr RingKind kind = RingKind::field;
    element one() const { return k.one(); }
    element embed(const typename F::element_type& c) const { return c; }
};

/// k[x]/(x^2).
template <BaseField F>
struct DualRing {
    using field_type = F;
    using element = Dual<typename F::element_type>;
    F k;
    static constexpr RingKind kind = RingKind::dual;
    element one() const { return element(k.one()); }
    element embed(const typename F::element_type& c) const { return element(c); }
    element x() const { return element(k.zero(), k.one()); }
};

/// k[x_0, ..., x_{v-1}].
template <BaseField F>
struct PolyRing {
    using field_type = F;
    using element = MPoly<typename F::element_type>;
    F k;
    std::vector<std::string> variables;
    static constexpr RingKind kind = RingKind::poly;
    element one() const { return element(k.one()); }
    element embed(const typename F::element_type& c) const { return element(c); }
    element var(int i) const { return element::variable(i, k.one()); }
};

/// Point [X; I_n] of the affine chart around the worst point, rows ordered as
/// Arzdorf's basis of Λ_m ⊗ k.  n = 2m+1 odd.
template <class Ring>
struct ChartPoint {
    using R = typename Ring::element;
    Ring ring;
    int n = 3;
    TypePair signature{2, 1};
    Matrix<R> X;

    ChartPoint(Ring rg, int n_, TypePair sig) : ring(std::move(rg)), n(n_), signature(sig), X(n_, n_) {
        if (n < 3 || n % 2 == 0 || n > kMaxRank) throw std::invalid_argument("chart points need odd n >= 3");
        if (sig.r < 0 || sig.s < 0 || sig.r + sig.s != n) throw std::invalid_argument("signature must satisfy r + s = n");
    }

    Matrix<R> block(int r0, int c0, int rows, int cols) const {
        Matrix<R> B(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) B(i, j) = X(r0 + i, c0 + j);
        return B;
    }
    Matrix<R> X1() const { return block(0, 0, n - 1, n - 1); }
    Matrix<R> X2() const { return block(0, n - 1, n - 1, 1); }
    Matrix<R> X3() const { return block(n - 1, 0, 1, n - 1); }
    const R& X4() const { return X(n - 1, n - 1); }

    void set_X1(const Matrix<R>& M) {
        for (int i = 0; i < n - 1; ++i)
            for (int j = 0; j < n - 1; ++j) X(i, j) = M(i, j);
    }
    void set_X3(const Matrix<R>& M) {
        for (int j = 0; j < n - 1; ++j) X(n - 1, j) = M(0, j);
    }

    bool on_x2_x4_zero_locus() const { return is_zero_matrix(X2()) && X4().is_zero(); }
};

/// Position p (1-based) in Arzdorf's ordering -> index of the same vector in the
/// standard ordering π⁻¹e_1..π⁻¹e_m, e_{m+1}..e_n, e_1..e_m, πe_{m+1}..πe_n.
inline int arzdorf_to_standard(int n, int p) {
    int m = n / 2;
    if (p <= m) return m + 1 + p;                   // e_{m+2..n}
    if (p <= 2 * m) return p - m;                   // π⁻¹e_{1..m}
    if (p == n) return m + 1;                       // e_{m+1}
    if (p <= n + m) return n + m + 1 + (p - n);     // πe_{m+2..n}
    if (p <= 2 * n - 1) return n + (p - n - m);     // e_{1..m}
    return n + m + 1;                               // πe_{m+1}
}

/// Columns of [X; I_n] rewritten in the standard (e-basis) ordering.
template <class Ring>
std::vector<std::vector<typename Ring::element>> chart_point_embed(const ChartPoint<Ring>& pt) {
    int n = pt.n;
    std::vector<std::vector<typename Ring::element>> cols(n, std::vector<typename Ring::element>(2 * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) cols[j][arzdorf_to_standard(n, i + 1) - 1] = pt.X(i, j);
        cols[j][arzdorf_to_standard(n, n + j + 1) - 1] = pt.ring.one();
    }
    return cols;
}

/// Wedge of the chart columns in e-coordinates.
template <class Ring>
WedgeVector<typename Ring::element> chart_wedge(const ChartPoint<Ring>& pt) {
    return wedge_columns(pt.n, chart_point_embed(pt), BasisTag::e_basis, pt.n);
}

/// (n-1)x(n-1) antidiagonal matrix, +1 in the top m rows and -1 in the bottom m rows.
template <class Ring>
Matrix<typename Ring::element> j_matrix(const Ring& ring, int n) {
    int d = n - 1, m = n / 2;
    Matrix<typename Ring::element> J(d, d);
    for (int i = 0; i < d; ++i) J(i, d - 1 - i) = i < m ? ring.one() : -ring.one();
    return J;
}

/// Coefficients of det(T·I - A), leading coefficient first, by the division-free
/// Berkowitz recursion.
template <class R>
std::vector<R> charpoly_berkowitz(const Matrix<R>& A, const R& one) {
    int n = A.rows;
    if (n == 0) return {one};
    if (n == 1) return {one, -A(0, 0)};
    Matrix<R> sub(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) sub(i - 1, j - 1) = A(i, j);
    // Toeplitz entries: 1, -a, -R C, -R A C, ..., -R A^{n-2} C
    std::vector<R> diags{one, -A(0, 0)};
    std::vector<R> vec(n - 1);
    for (int i = 1; i < n; ++i) vec[i - 1] = A(i, 0);
    for (int t = 0; t < n - 1; ++t) {
        R acc{};
        for (int j = 1; j < n; ++j) acc += A(0, j) * vec[j - 1];
        diags.push_back(-acc);
        if (t + 1 < n - 1) {
            std::vector<R> nv(n - 1);
            for (int i = 0; i < n - 1; ++i)
                for (int j = 0; j < n - 1; ++j) nv[i] += sub(i, j) * vec[j];
            vec = std::move(nv);
        }
    }
    auto inner = charpoly_berkowitz(sub, one);  // length n
    std::vector<R> out(n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n && j <= i; ++j)
            if (i - j < static_cast<int>(diags.size())) out[i] += diags[i - j] * inner[j];
    return out;
}

enum class Status { pass, fail, out_of_chart };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::out_of_chart: return "out_of_translated_chart";
    }
    return "?";
}

struct Verdict {
    Status status = Status::pass;
    std::string witness;
    bool passed() const { return status == Status::pass; }
    static Verdict ok() { return {}; }
    static Verdict failed(std::string w) { return {Status::fail, std::move(w)}; }
};

struct ConditionReport {
    std::vector<std::pair<std::string, Verdict>> entries;
    void add(std::string name, Verdict v) { entries.emplace_back(std::move(name), std::move(v)); }
    const Verdict& at(const std::string& name) const {
        for (auto& [k, v] : entries)
            if (k == name) return v;
        throw std::out_of_range("no condition " + name);
    }
};

namespace detail {
template <class R>
std::optional<std::string> first_nonzero(const Matrix<R>& M, const std::string& label) {
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j)
            if (!M(i, j).is_zero())
                return label + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "] = " + M(i, j).to_string();
    return std::nullopt;
}
}  // namespace detail

/// -J X3ᵗX3 = X1 + J X1ᵗ J, X1² = 0, X3 X1 = 0 on the X2 = X4 = 0 locus.
template <class Ring>
Verdict check_naive_relations(const ChartPoint<Ring>& pt) {
    if (!pt.on_x2_x4_zero_locus()) {
        auto sq = pt.X4() * pt.X4();
        if (!sq.is_zero()) return Verdict::failed("X4^2 = " + sq.to_string());
        return {Status::out_of_chart, "X2 or X4 nonzero"};
    }
    auto X1 = pt.X1(), X3 = pt.X3();
    auto J = j_matrix(pt.ring, pt.n);
    auto lhs = J * transpose(X3) * X3;
    for (auto& e : lhs.a) e = -e;
    auto rhs = X1 + J * transpose(X1) * J;
    if (auto w = detail::first_nonzero(lhs - rhs, "(-J X3^t X3) - (X1 + J X1^t J)")) return Verdict::failed(*w);
    if (auto w = detail::first_nonzero(X1 * X1, "X1^2")) return Verdict::failed(*w);
    if (auto w = detail::first_nonzero(X3 * X1, "X3 X1")) return Verdict::failed(*w);
    return Verdict::ok();
}

/// charpoly(X) = T^n.
template <class Ring>
Verdict check_kottwitz(const ChartPoint<Ring>& pt) {
    auto c = charpoly_berkowitz(pt.X, pt.ring.one());
    for (std::size_t i = 1; i < c.size(); ++i)
        if (!c[i].is_zero()) return Verdict::failed("coefficient of T^" + std::to_string(c.size() - 1 - i) + " = " + c[i].to_string());
    return Verdict::ok();
}

/// All 2x2 minors of [X1; X3] vanish.
template <class Ring>
Verdict check_wedge(const ChartPoint<Ring>& pt) {
    if (!pt.on_x2_x4_zero_locus()) return {Status::out_of_chart, "X2 or X4 nonzero"};
    int rows = pt.n, cols = pt.n - 1;
    for (int a = 0; a < rows; ++a)
        for (int b = a + 1; b < rows; ++b)
            for (int c = 0; c < cols; ++c)
                for (int d = c + 1; d < cols; ++d) {
                    auto minor = pt.X(a, c) * pt.X(b, d) - pt.X(a, d) * pt.X(b, c);
                    if (!minor.is_zero())
                        return Verdict::failed("minor rows " + std::to_string(a + 1) + "," + std::to_string(b + 1) + " cols " +
                                               std::to_string(c + 1) + "," + std::to_string(d + 1) + " = " + minor.to_string());
                }
    return Verdict::ok();
}

template <class Ring>
Verdict check_trace(const ChartPoint<Ring>& pt) {
    if (!pt.on_x2_x4_zero_locus()) return {Status::out_of_chart, "X2 or X4 nonzero"};
    typename Ring::element t{};
    for (int i = 0; i < pt.n - 1; ++i) t += pt.X(i, i);
    if (!t.is_zero()) return Verdict::failed("tr X1 = " + t.to_string());
    return Verdict::ok();
}

/// Lattices needed by the membership checkers, computed once per spec.
template <BaseField F>
class LatticeCache {
public:
    using K = typename F::element_type;

    LatticeCache(const F& k, int n, int precision = kDefaultPrecision) : fac_(k, n), precision_(precision) {}

    const WedgeFactory<F>& factory() const { return fac_; }
    int rank() const { return fac_.rank(); }
    int precision() const { return precision_; }

    std::shared_ptr<const LatticeData<K>> get(const LatticeSpec& spec) const {
        auto key = spec.to_string();
        std::lock_guard lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        auto d = std::make_shared<const LatticeData<K>>(compute_lattice(fac_, spec, precision_));
        cache_.emplace(key, d);
        return d;
    }

private:
    WedgeFactory<F> fac_;
    int precision_;
    mutable std::mutex mu_;
    mutable std::map<std::string, std::shared_ptr<const LatticeData<K>>> cache_;
};

namespace detail {
template <class R, FieldElement K>
Verdict membership_verdict(const WedgeVector<R>& w, const AnnihilatorSet<K>& ann, const std::string& what) {
    auto m = membership_over_R(w, ann);
    if (m.pass) return Verdict::ok();
    return Verdict::failed(what + " functional at " + m.witness->to_string() + " evaluates to " + m.value.to_string());
}
}  // namespace detail

template <class Ring, BaseField F>
Verdict check_spin(const ChartPoint<Ring>& pt, int eps, const LatticeCache<F>& cache) {
    auto d = cache.get(LatticeSpec::spin(pt.n, eps));
    return detail::membership_verdict(chart_wedge(pt), d->ann, "spin");
}

template <class Ring, BaseField F>
Verdict check_refined(const ChartPoint<Ring>& pt, const LatticeCache<F>& cache) {
    auto [r, s] = pt.signature;
    auto d = cache.get(LatticeSpec::refined(pt.n, s % 2 == 0 ? 1 : -1, r, s));
    return detail::membership_verdict(chart_wedge(pt), d->ann, "refined");
}

/// Every l-fold wedge of the columns lies in the image of ^lW^{r,s} ∩ ⋀^l Λ_m.
template <class Ring, BaseField F>
Verdict check_kl(const ChartPoint<Ring>& pt, int l, const LatticeCache<F>& cache) {
    auto [r, s] = pt.signature;
    auto d = cache.get(LatticeSpec::kl(pt.n, l, r, s));
    auto cols = chart_point_embed(pt);
    for (auto& T : enumerate_subsets(pt.n, l)) {
        auto Te = T.elements();
        if (Te.back() > pt.n) continue;
        std::vector<std::vector<typename Ring::element>> pick;
        for (int c : Te) pick.push_back(cols[c - 1]);
        auto w = wedge_columns(pt.n, pick, BasisTag::e_basis, l);
        auto v = detail::membership_verdict(w, d->ann, "K_" + std::to_string(l));
        if (!v.passed()) {
            v.witness = "columns " + T.to_string() + ": " + v.witness;
            return v;
        }
    }
    return Verdict::ok();
}

/// Coefficient of the X4-detecting coordinate vanishes.
template <class Ring>
Verdict check_x4_coordinate(const ChartPoint<Ring>& pt) {
    auto c = chart_wedge(pt).coeff(x4_detecting_set(pt.n));
    if (c.is_zero()) return Verdict::ok();
    return Verdict::failed("coefficient " + c.to_string());
}

/// All conditions for one point.  kl is evaluated for every l in 1..n.
template <class Ring, BaseField F>
ConditionReport check_all(const ChartPoint<Ring>& pt, const LatticeCache<F>& cache) {
    ConditionReport rep;
    rep.add("naive", check_naive_relations(pt));
    rep.add("kottwitz", check_kottwitz(pt));
    rep.add("wedge", check_wedge(pt));
    rep.add("trace", check_trace(pt));
    rep.add("spin(+1)", check_spin(pt, 1, cache));
    rep.add("spin(-1)", check_spin(pt, -1, cache));
    rep.add("refined", check_refined(pt, cache));
    for (int l = 1; l <= pt.n; ++l) rep.add("kl(" + std::to_string(l) + ")", check_kl(pt, l, cache));
    return rep;
}

}  // namespace rlm
