#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace rlm {

/// Sentinel for +infinity valuations.
inline constexpr int kInfOrd = INT_MAX;

/// Finite Laurent polynomial sum_e c_e pi^e over a base field.  The element pi
/// squares to pi_0, so this is the desk model of F = k((pi)).
template <FieldElement K>
class PiLaurent {
public:
    using scalar_type = K;
    using map_type = std::map<int, K>;

    PiLaurent() = default;
    explicit PiLaurent(const K& c) { set(0, c); }
    static PiLaurent monomial(int e, const K& c) {
        PiLaurent r;
        r.set(e, c);
        return r;
    }

    bool is_zero() const { return c_.empty(); }
    const map_type& terms() const { return c_; }

    K coeff(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? K{} : it->second;
    }

    /// Least exponent with a nonzero coefficient, kInfOrd for zero.
    int ord() const { return c_.empty() ? kInfOrd : c_.begin()->first; }
    int max_exponent() const { return c_.empty() ? INT_MIN : c_.rbegin()->first; }

    /// Multiply by pi^k.
    PiLaurent shifted(int k) const {
        PiLaurent r;
        for (auto& [e, c] : c_) r.c_.emplace_hint(r.c_.end(), e + k, c);
        return r;
    }

    /// Terms with exponent < bound.
    PiLaurent truncated(int bound) const {
        PiLaurent r;
        r.c_.insert(c_.begin(), c_.lower_bound(bound));
        return r;
    }

    PiLaurent operator-() const {
        PiLaurent r;
        for (auto& [e, c] : c_) r.c_.emplace_hint(r.c_.end(), e, -c);
        return r;
    }

    PiLaurent& operator+=(const PiLaurent& o) {
        for (auto& [e, c] : o.c_) add_term(e, c);
        return *this;
    }
    PiLaurent& operator-=(const PiLaurent& o) {
        for (auto& [e, c] : o.c_) add_term(e, -c);
        return *this;
    }
    friend PiLaurent operator+(PiLaurent a, const PiLaurent& b) { return a += b; }
    friend PiLaurent operator-(PiLaurent a, const PiLaurent& b) { return a -= b; }

    friend PiLaurent operator*(const PiLaurent& a, const PiLaurent& b) {
        PiLaurent r;
        for (auto& [ea, ca] : a.c_)
            for (auto& [eb, cb] : b.c_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    PiLaurent& operator*=(const PiLaurent& o) { return *this = *this * o; }

    friend PiLaurent operator*(const K& s, const PiLaurent& a) {
        PiLaurent r;
        if (s.is_zero()) return r;
        for (auto& [e, c] : a.c_) r.set(e, s * c);
        return r;
    }

    friend bool operator==(const PiLaurent& a, const PiLaurent& b) {
        if (a.c_.size() != b.c_.size()) return false;
        return std::equal(a.c_.begin(), a.c_.end(), b.c_.begin(),
                          [](auto& x, auto& y) { return x.first == y.first && x.second == y.second; });
    }

    void add_term(int e, const K& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = c_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : c_) {
            if (!first) os << " + ";
            first = false;
            os << c.to_string();
            if (e != 0) os << "*pi^" << e;
        }
        return os.str();
    }

private:
    void set(int e, const K& c) {
        if (c.is_zero())
            c_.erase(e);
        else
            c_[e] = c;
    }

    map_type c_;
};

/// ord_pi of an exact Laurent polynomial.
template <FieldElement K>
int ord_pi(const PiLaurent<K>& a) {
    return a.ord();
}

/// A pi-adic number known modulo pi^precision: terms with exponent >= precision
/// are discarded.  precision == kInfOrd marks an exact value.
template <FieldElement K>
class PiSeries {
public:
    using scalar_type = K;

    PiSeries() = default;
    PiSeries(PiLaurent<K> body, int precision = kInfOrd) : prec_(precision) {
        body_ = precision == kInfOrd ? std::move(body) : body.truncated(precision);
    }

    const PiLaurent<K>& body() const { return body_; }
    int precision() const { return prec_; }
    bool exact() const { return prec_ == kInfOrd; }

    /// True when no stored coefficient survives.  For inexact values this does
    /// not mean the number is zero.
    bool body_zero() const { return body_.is_zero(); }
    bool is_zero() const { return body_.is_zero(); }

    /// Valuation; throws PrecisionError when all known digits vanish.
    int ord() const {
        if (!body_.is_zero()) return body_.ord();
        if (exact()) return kInfOrd;
        throw PrecisionError("valuation indeterminate at precision " + std::to_string(prec_));
    }

    /// Lower bound for the valuation that never throws.
    int ord_lower_bound() const { return body_.is_zero() ? prec_ : body_.ord(); }

    PiSeries shifted(int k) const {
        return PiSeries(body_.shifted(k), exact() ? kInfOrd : prec_ + k);
    }

    PiSeries operator-() const { return PiSeries(-body_, prec_); }

    friend PiSeries operator+(const PiSeries& a, const PiSeries& b) {
        return PiSeries(a.body_ + b.body_, std::min(a.prec_, b.prec_));
    }
    friend PiSeries operator-(const PiSeries& a, const PiSeries& b) {
        return PiSeries(a.body_ - b.body_, std::min(a.prec_, b.prec_));
    }
    friend PiSeries operator*(const PiSeries& a, const PiSeries& b) {
        // a = A + O(pi^pa), b = B + O(pi^pb): the error is O(pi^min(pa+vb, pb+va)).
        int p = kInfOrd;
        if (!a.exact()) p = std::min(p, sat_add(a.prec_, b.ord_lower_bound()));
        if (!b.exact()) p = std::min(p, sat_add(b.prec_, a.ord_lower_bound()));
        return PiSeries(a.body_ * b.body_, p);
    }
    PiSeries& operator+=(const PiSeries& o) { return *this = *this + o; }
    PiSeries& operator-=(const PiSeries& o) { return *this = *this - o; }
    PiSeries& operator*=(const PiSeries& o) { return *this = *this * o; }

    /// Equality of known digits at common precision.
    friend bool operator==(const PiSeries& a, const PiSeries& b) {
        int p = std::min(a.prec_, b.prec_);
        if (p == kInfOrd) return a.body_ == b.body_;
        return a.body_.truncated(p) == b.body_.truncated(p);
    }

    std::string to_string() const {
        auto s = body_.to_string();
        if (!exact()) s += " + O(pi^" + std::to_string(prec_) + ")";
        return s;
    }

private:
    static int sat_add(int a, int b) {
        if (a == kInfOrd || b == kInfOrd) return kInfOrd;
        return a + b;
    }

    PiLaurent<K> body_;
    int prec_ = kInfOrd;
};

template <FieldElement K>
int ord_pi(const PiSeries<K>& a) {
    return a.ord();
}

/// b with ord(b) = -ord(a) and a*b = 1 mod pi^precision.  Monomials invert exactly.
template <FieldElement K>
PiSeries<K> truncated_inverse(const PiLaurent<K>& a, int precision) {
    if (a.is_zero()) throw std::domain_error("truncated_inverse of zero");
    int v = a.ord();
    auto u = a.shifted(-v);  // unit part, u(0) != 0
    K u0inv = u.coeff(0).inv();
    if (u.terms().size() == 1) return PiSeries<K>(PiLaurent<K>::monomial(-v, u0inv));
    // w * u = 1 mod pi^precision, solved term by term
    int len = precision;
    PiLaurent<K> w;
    std::vector<K> wc(std::max(len, 0));
    if (len > 0) wc[0] = u0inv;
    for (int k = 1; k < len; ++k) {
        K acc{};
        for (auto& [e, c] : u.terms()) {
            if (e > k) break;
            if (e > 0) acc += c * wc[k - e];
        }
        wc[k] = -(acc * u0inv);
    }
    for (int k = 0; k < len; ++k) w.add_term(k, wc[k]);
    return PiSeries<K>(w.shifted(-v), precision - v);
}

}  // namespace rlm
