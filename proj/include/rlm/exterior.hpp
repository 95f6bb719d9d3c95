#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "index_set.hpp"
#include "pi_laurent.hpp"
#include "rings.hpp"

namespace rlm {

/// Dense row-major matrix over a ring.
template <class R>
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<R> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    R& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const R& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    std::vector<R> column(int j) const {
        std::vector<R> c(rows);
        for (int i = 0; i < rows; ++i) c[i] = (*this)(i, j);
        return c;
    }
    friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <class R>
Matrix<R> operator*(const Matrix<R>& x, const Matrix<R>& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    Matrix<R> z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const R& xik = x(i, k);
            if (xik.is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}
template <class R>
Matrix<R> operator+(Matrix<R> x, const Matrix<R>& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}
template <class R>
Matrix<R> operator-(Matrix<R> x, const Matrix<R>& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}
template <class R>
Matrix<R> transpose(const Matrix<R>& x) {
    Matrix<R> t(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) t(j, i) = x(i, j);
    return t;
}
template <class R>
bool is_zero_matrix(const Matrix<R>& x) {
    for (auto& e : x.a)
        if (!e.is_zero()) return false;
    return true;
}

/// Vector of V in coordinates over u_1..u_2n, u_i = e_i⊗1, u_{n+i} = πe_i⊗1.
template <FieldElement K>
using AmbientVector = std::vector<PiLaurent<K>>;

enum class BasisTag { ambient_wedge, e_basis, f_basis };

inline std::string to_string(BasisTag t) {
    switch (t) {
        case BasisTag::ambient_wedge: return "ambient_wedge";
        case BasisTag::e_basis: return "e_basis";
        case BasisTag::f_basis: return "f_basis";
    }
    return "?";
}

/// Element of ⋀^l V as a sparse map from l-subsets to coefficients.
template <class R>
struct WedgeVector {
    int n = 1;
    int degree = 0;
    BasisTag tag = BasisTag::ambient_wedge;
    std::map<IndexSet, R> terms;

    bool is_zero() const { return terms.empty(); }

    R coeff(const IndexSet& S) const {
        auto it = terms.find(S);
        return it == terms.end() ? R{} : it->second;
    }

    void add(const IndexSet& S, const R& c) {
        if (c.is_zero()) return;
        auto [it, ins] = terms.try_emplace(S, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    WedgeVector& operator+=(const WedgeVector& o) {
        check_compatible(o);
        for (auto& [S, c] : o.terms) add(S, c);
        return *this;
    }
    WedgeVector& operator-=(const WedgeVector& o) {
        check_compatible(o);
        for (auto& [S, c] : o.terms) add(S, -c);
        return *this;
    }
    friend WedgeVector operator+(WedgeVector a, const WedgeVector& b) { return a += b; }
    friend WedgeVector operator-(WedgeVector a, const WedgeVector& b) { return a -= b; }

    /// Multiply every coefficient by c (on the left).
    template <class S>
    WedgeVector scaled(const S& c) const {
        WedgeVector r{n, degree, tag, {}};
        for (auto& [T, x] : terms) r.add(T, c * x);
        return r;
    }

    friend bool operator==(const WedgeVector& a, const WedgeVector& b) {
        return a.n == b.n && a.degree == b.degree && a.tag == b.tag && a.terms == b.terms;
    }

    void check_compatible(const WedgeVector& o) const {
        if (n != o.n || degree != o.degree || tag != o.tag)
            throw std::invalid_argument("wedge vectors live in different spaces");
    }
};

/// Wedge of columns (left to right) given in some 2n-frame; the coefficient at T
/// is the minor on rows T (increasing order).  Expansion folds one column at a time.
template <class R>
std::map<IndexSet, R> wedge_columns_map(int n, const std::vector<std::vector<R>>& cols) {
    std::map<IndexSet, R> acc;
    if (cols.empty()) return acc;
    for (auto& c : cols)
        if (static_cast<int>(c.size()) != 2 * n) throw std::invalid_argument("column length must be 2n");
    for (int k = 0; k < 2 * n; ++k)
        if (!cols[0][k].is_zero()) acc.emplace(IndexSet(n, IndexSet::bit(k + 1)), cols[0][k]);
    for (std::size_t j = 1; j < cols.size(); ++j) {
        std::map<IndexSet, R> next;
        for (auto& [T, c] : acc)
            for (int k = 1; k <= 2 * n; ++k) {
                const R& x = cols[j][k - 1];
                if (x.is_zero() || T.contains(k)) continue;
                R term = c * x;
                if (T.count_above(k) % 2) term = -term;
                auto U = T.with(k);
                auto [it, ins] = next.try_emplace(U, term);
                if (!ins) it->second += term;
            }
        std::erase_if(next, [](auto& kv) { return kv.second.is_zero(); });
        acc = std::move(next);
    }
    return acc;
}

template <class R>
WedgeVector<R> wedge_columns(int n, const std::vector<std::vector<R>>& cols, BasisTag tag, int expected_degree = -1) {
    if (expected_degree >= 0 && static_cast<int>(cols.size()) != expected_degree)
        throw std::invalid_argument("expected " + std::to_string(expected_degree) + " columns, got " +
                                    std::to_string(cols.size()));
    return WedgeVector<R>{n, static_cast<int>(cols.size()), tag, wedge_columns_map(n, cols)};
}

/// The induced action of ⋀^l(op) on w, op acting on the frame in which w is written.
template <class R>
WedgeVector<R> apply_wedge_power_operator(const Matrix<R>& op, const WedgeVector<R>& w) {
    if (op.rows != 2 * w.n || op.cols != 2 * w.n) throw std::invalid_argument("operator must be 2n x 2n");
    if (w.degree < 1 || w.degree > 2 * w.n) throw std::invalid_argument("wedge degree out of range");
    WedgeVector<R> out{w.n, w.degree, w.tag, {}};
    for (auto& [T, c] : w.terms) {
        std::vector<std::vector<R>> cols;
        for (int t : T.elements()) cols.push_back(op.column(t - 1));
        if (static_cast<int>(cols.size()) != w.degree) throw std::invalid_argument("term degree mismatch");
        for (auto& [U, x] : wedge_columns_map(w.n, cols)) out.add(U, c * x);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Forms and frames

enum class FormKind { alternating, symmetric };

/// F-bilinear forms on the ambient basis.
template <FieldElement K>
PiLaurent<K> form_eval(FormKind form, const AmbientVector<K>& v, const AmbientVector<K>& w) {
    int n = static_cast<int>(v.size()) / 2;
    if (static_cast<int>(w.size()) != 2 * n) throw std::invalid_argument("vector length mismatch");
    PiLaurent<K> r;
    for (int i = 1; i <= n; ++i) {
        int j = dual_index(n, i);
        const auto& vi = v[i - 1];
        const auto& vni = v[n + i - 1];
        if (form == FormKind::symmetric) {
            if (!vi.is_zero()) r += vi * w[j - 1];
            if (!vni.is_zero()) r -= (vni * w[n + j - 1]).shifted(2);
        } else {
            if (!vi.is_zero()) r += vi * w[n + j - 1];
            if (!vni.is_zero()) r -= vni * w[j - 1];
        }
    }
    return r;
}

/// π⊗1 : u_i -> u_{n+i}, u_{n+i} -> π² u_i.
template <FieldElement K>
AmbientVector<K> pi_tensor_one(const AmbientVector<K>& v) {
    int n = static_cast<int>(v.size()) / 2;
    AmbientVector<K> r(2 * n);
    for (int i = 0; i < n; ++i) {
        r[n + i] = v[i];
        r[i] = v[n + i].shifted(2);
    }
    return r;
}

/// Matrix of π⊗1 on the ambient basis.
template <FieldElement K>
Matrix<PiLaurent<K>> pi_tensor_one_matrix(int n, const K& one) {
    Matrix<PiLaurent<K>> M(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        M(n + i, i) = PiLaurent<K>(one);
        M(i, n + i) = PiLaurent<K>::monomial(2, one);
    }
    return M;
}

/// Scalar matrix c·id.
template <class R>
Matrix<R> scalar_matrix(int dim, const R& c) {
    Matrix<R> M(dim, dim);
    for (int i = 0; i < dim; ++i) M(i, i) = c;
    return M;
}

enum class FrameKind { lambda, f_split, g_split };

inline std::string to_string(FrameKind k) {
    switch (k) {
        case FrameKind::lambda: return "lambda";
        case FrameKind::f_split: return "f_split";
        case FrameKind::g_split: return "g_split";
    }
    return "?";
}

/// Ordered list of 2n vectors of V.  For lambda frames each vector is a monomial
/// π^{shift[j]} u_{target[j]}.
template <FieldElement K>
struct Frame {
    FrameKind kind = FrameKind::lambda;
    int n = 0;
    int lattice_index = 0;
    std::vector<AmbientVector<K>> vectors;
    std::vector<int> target;  // lambda only, 1-based ambient index
    std::vector<int> shift;   // lambda only
};

/// π^a e_j written in the ambient basis: a even -> π^a u_j, a odd -> π^{a-1} u_{n+j}.
inline std::pair<int, int> pi_power_e(int n, int a, int j) {
    int odd = ((a % 2) + 2) % 2;
    return odd ? std::pair{n + j, a - 1} : std::pair{j, a};
}

namespace detail {

inline int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

template <BaseField F>
void check_split(const F& k, const Frame<typename F::element_type>& fr) {
    int n = fr.n;
    for (int i = 1; i <= 2 * n; ++i)
        for (int j = i; j <= 2 * n; ++j) {
            auto v = form_eval(FormKind::symmetric, fr.vectors[i - 1], fr.vectors[j - 1]);
            auto expect = (j == star_index(n, i)) ? PiLaurent<typename F::element_type>(k.one())
                                                  : PiLaurent<typename F::element_type>{};
            if (!(v == expect))
                throw std::logic_error(to_string(fr.kind) + " frame is not split at (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")");
        }
}

}  // namespace detail

/// Builds and self-checks one of the three frames.  `lattice_index` is only used
/// for lambda frames.
template <BaseField F>
Frame<typename F::element_type> build_frame(const F& k, FrameKind kind, int n, int lattice_index = -1) {
    using K = typename F::element_type;
    using L = PiLaurent<K>;
    if (n < 2 || n > kMaxRank) throw std::invalid_argument("rank out of range");
    Frame<K> fr;
    fr.kind = kind;
    fr.n = n;
    int m = n / 2;
    auto unit = [&](int idx, int e, const K& c) {
        AmbientVector<K> v(2 * n);
        v[idx - 1] = L::monomial(e, c);
        return v;
    };
    auto plus = [](AmbientVector<K> a, const AmbientVector<K>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };
    const K one = k.one(), half = k.half();

    switch (kind) {
        case FrameKind::lambda: {
            int i = lattice_index < 0 ? m : lattice_index;
            fr.lattice_index = i;
            int b = detail::floor_div(i, n), c = i - b * n;
            std::vector<std::pair<int, int>> spec;  // (power of π, e-index)
            for (int j = 1; j <= c; ++j) spec.emplace_back(-b - 1, j);
            for (int j = c + 1; j <= n; ++j) spec.emplace_back(-b, j);
            for (int j = 1; j <= c; ++j) spec.emplace_back(-b, j);
            for (int j = c + 1; j <= n; ++j) spec.emplace_back(-b + 1, j);
            for (auto [a, j] : spec) {
                auto [idx, e] = pi_power_e(n, a, j);
                fr.vectors.push_back(unit(idx, e, one));
                fr.target.push_back(idx);
                fr.shift.push_back(e);
            }
            std::vector<bool> hit(2 * n, false);
            for (int t : fr.target) hit[t - 1] = true;
            for (bool h : hit)
                if (!h) throw std::logic_error("lambda frame is not a monomial basis");
            break;
        }
        case FrameKind::g_split: {
            for (int i = 1; i <= n; ++i) fr.vectors.push_back(plus(unit(i, 0, one), unit(n + i, -1, -one)));
            for (int i = 1; i <= n; ++i) fr.vectors.push_back(plus(unit(i, 0, half), unit(n + i, -1, half)));
            // eigenvectors of π⊗1 with eigenvalues -π, +π
            for (int j = 0; j < 2 * n; ++j) {
                auto img = pi_tensor_one(fr.vectors[j]);
                L lam = L::monomial(1, j < n ? -one : one);
                for (int t = 0; t < 2 * n; ++t)
                    if (!(img[t] == lam * fr.vectors[j][t])) throw std::logic_error("g frame eigenvector check failed");
            }
            detail::check_split(k, fr);
            break;
        }
        case FrameKind::f_split: {
            if (n % 2 == 1) {
                for (int i = 1; i <= m; ++i) fr.vectors.push_back(unit(n + i, -2, -one));
                fr.vectors.push_back(plus(unit(m + 1, 0, one), unit(n + m + 1, -1, -one)));
                for (int i = m + 2; i <= n; ++i) fr.vectors.push_back(unit(i, 0, one));
                for (int i = 1; i <= m; ++i) fr.vectors.push_back(unit(i, 0, one));
                fr.vectors.push_back(plus(unit(m + 1, 0, half), unit(n + m + 1, -1, half)));
                for (int i = m + 2; i <= n; ++i) fr.vectors.push_back(unit(n + i, 0, one));
            } else {
                for (int i = 1; i <= m; ++i) fr.vectors.push_back(unit(n + i, -2, -one));
                for (int i = m + 1; i <= n; ++i) fr.vectors.push_back(unit(i, 0, one));
                for (int i = 1; i <= m; ++i) fr.vectors.push_back(unit(i, 0, one));
                for (int i = m + 1; i <= n; ++i) fr.vectors.push_back(unit(n + i, 0, one));
            }
            detail::check_split(k, fr);
            break;
        }
    }
    return fr;
}

/// Wedge of the frame vectors indexed by S (increasing), in ambient-wedge coordinates.
template <FieldElement K>
WedgeVector<PiLaurent<K>> basis_wedge(const Frame<K>& fr, const IndexSet& S) {
    std::vector<std::vector<PiLaurent<K>>> cols;
    for (int j : S.elements()) cols.push_back(fr.vectors[j - 1]);
    return wedge_columns(fr.n, cols, BasisTag::ambient_wedge);
}

/// Sign of sorting a list of distinct integers.
inline int sort_sign(std::vector<int> v) {
    int s = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) s = -s;
    return s;
}

/// Converts between ambient-wedge and e-basis coordinates, where e_S is the
/// wedge of the lambda-frame vectors indexed by S.  The frame is a monomial
/// permutation of the ambient basis, so this is coefficient-wise.
template <FieldElement K>
WedgeVector<PiLaurent<K>> change_wedge_basis(const Frame<K>& lambda, const WedgeVector<PiLaurent<K>>& w,
                                            BasisTag target) {
    if (lambda.kind != FrameKind::lambda) throw std::invalid_argument("e-basis needs a lambda frame");
    if (w.tag == target) throw std::invalid_argument("source and target basis coincide");
    int n = lambda.n;
    std::vector<int> inv(2 * n + 1);
    for (int j = 1; j <= 2 * n; ++j) inv[lambda.target[j - 1]] = j;
    WedgeVector<PiLaurent<K>> out{n, w.degree, target, {}};
    if (w.tag == BasisTag::ambient_wedge && target == BasisTag::e_basis) {
        for (auto& [T, c] : w.terms) {
            std::vector<int> js;
            int total = 0;
            for (int t : T.elements()) {
                js.push_back(inv[t]);
                total += lambda.shift[inv[t] - 1];
            }
            // u_T = sign * π^{-total} e_S, sign from ordering the u's as e's
            std::vector<int> targets;
            std::vector<int> sorted_js = js;
            std::sort(sorted_js.begin(), sorted_js.end());
            for (int j : sorted_js) targets.push_back(lambda.target[j - 1]);
            auto coef = c.shifted(-total);
            if (sort_sign(targets) < 0) coef = -coef;
            out.add(IndexSet(n, sorted_js), coef);
        }
    } else if (w.tag == BasisTag::e_basis && target == BasisTag::ambient_wedge) {
        for (auto& [S, c] : w.terms) {
            std::vector<int> targets;
            int total = 0;
            for (int j : S.elements()) {
                targets.push_back(lambda.target[j - 1]);
                total += lambda.shift[j - 1];
            }
            auto coef = c.shifted(total);
            if (sort_sign(targets) < 0) coef = -coef;
            std::sort(targets.begin(), targets.end());
            out.add(IndexSet(n, targets), coef);
        }
    } else {
        throw std::invalid_argument("unsupported basis change");
    }
    return out;
}

/// (WT(w), min valuation): all terms of minimal π-valuation with their exact coefficients.
template <FieldElement K>
std::pair<WedgeVector<PiLaurent<K>>, int> worst_terms(const WedgeVector<PiLaurent<K>>& w) {
    if (w.is_zero()) throw std::invalid_argument("worst term of zero");
    int v = kInfOrd;
    for (auto& [S, c] : w.terms) v = std::min(v, c.ord());
    WedgeVector<PiLaurent<K>> wt{w.n, w.degree, w.tag, {}};
    for (auto& [S, c] : w.terms)
        if (c.ord() == v) wt.add(S, PiLaurent<K>::monomial(v, c.coeff(v)));
    return {wt, v};
}

/// Coordinates over a split frame: u_k = Σ_j (u_k, f_{j*}) f_j.  Returned as the
/// change-of-basis matrix C with C(j, k) = (u_k, f_{j*}).
template <FieldElement K>
Matrix<PiLaurent<K>> split_coordinates_matrix(const Frame<K>& fr, const K& one) {
    int n = fr.n;
    Matrix<PiLaurent<K>> C(2 * n, 2 * n);
    for (int kk = 1; kk <= 2 * n; ++kk) {
        AmbientVector<K> u(2 * n);
        u[kk - 1] = PiLaurent<K>(one);
        for (int j = 1; j <= 2 * n; ++j)
            C(j - 1, kk - 1) = form_eval(FormKind::symmetric, u, fr.vectors[star_index(n, j) - 1]);
    }
    return C;
}

/// Rewrites an ambient wedge vector in the wedge basis of a split frame.
template <FieldElement K>
WedgeVector<PiLaurent<K>> to_split_wedge_basis(const Frame<K>& fr, const WedgeVector<PiLaurent<K>>& w,
                                               const K& one) {
    if (w.tag != BasisTag::ambient_wedge) throw std::invalid_argument("expected ambient wedge coordinates");
    auto out = apply_wedge_power_operator(split_coordinates_matrix(fr, one), w);
    out.tag = BasisTag::f_basis;
    return out;
}

/// The operator a on W in f-wedge coordinates: a(f_S) = sgn(σ_S) f_{S⊥}.
template <FieldElement K>
WedgeVector<PiLaurent<K>> apply_a(const WedgeVector<PiLaurent<K>>& w) {
    if (w.tag != BasisTag::f_basis || w.degree != w.n) throw std::invalid_argument("a acts on f-coordinates of ⋀^n V");
    WedgeVector<PiLaurent<K>> out{w.n, w.degree, w.tag, {}};
    for (auto& [S, c] : w.terms) out.add(S.perp(), sigma_sign_closed(S) > 0 ? c : -c);
    return out;
}

}  // namespace rlm
