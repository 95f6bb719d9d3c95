#pragma once

#include <algorithm>
#include <concepts>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"

namespace rlm {

/// Commutative ring element usable as a matrix / wedge coefficient.  Default
/// construction gives zero.
template <class R>
concept RingElement = std::regular<R> && requires(const R a, const R b) {
    { a + b } -> std::same_as<R>;
    { a - b } -> std::same_as<R>;
    { a * b } -> std::same_as<R>;
    { -a } -> std::same_as<R>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.to_string() } -> std::convertible_to<std::string>;
};

/// k[x]/(x^2): a + b x.
template <FieldElement K>
class Dual {
public:
    Dual() = default;
    explicit Dual(const K& a, const K& b = K{}) : a_(a), b_(b) {}

    const K& re() const { return a_; }
    const K& eps() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    Dual operator-() const { return Dual(-a_, -b_); }
    friend Dual operator+(const Dual& x, const Dual& y) { return Dual(x.a_ + y.a_, x.b_ + y.b_); }
    friend Dual operator-(const Dual& x, const Dual& y) { return Dual(x.a_ - y.a_, x.b_ - y.b_); }
    friend Dual operator*(const Dual& x, const Dual& y) { return Dual(x.a_ * y.a_, x.a_ * y.b_ + x.b_ * y.a_); }
    friend Dual operator*(const K& s, const Dual& x) { return Dual(s * x.a_, s * x.b_); }
    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator-=(const Dual& o) { return *this = *this - o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }
    friend bool operator==(const Dual& x, const Dual& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    std::string to_string() const {
        if (b_.is_zero()) return a_.to_string();
        return "(" + a_.to_string() + " + " + b_.to_string() + "*x)";
    }

private:
    K a_{};
    K b_{};
};

/// Exponent vector with trailing zeros trimmed, so polynomials built with
/// different variable counts compare correctly.
using Monomial = std::vector<int>;

/// Sparse multivariate polynomial over k.
template <FieldElement K>
class MPoly {
public:
    using term_map = std::map<Monomial, K>;

    MPoly() = default;
    explicit MPoly(const K& c) { add_term({}, c); }

    /// The variable x_i (0-based).
    static MPoly variable(int i, const K& one) {
        Monomial m(i + 1, 0);
        m[i] = 1;
        MPoly p;
        p.add_term(m, one);
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    const term_map& terms() const { return t_; }

    void add_term(Monomial m, const K& c) {
        if (c.is_zero()) return;
        while (!m.empty() && m.back() == 0) m.pop_back();
        auto [it, ins] = t_.try_emplace(std::move(m), c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    int total_degree() const {
        int d = -1;
        for (auto& [m, c] : t_) {
            int s = 0;
            for (int e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    /// Nonzero and every term of degree exactly one.
    bool is_homogeneous_linear() const {
        if (t_.empty()) return false;
        for (auto& [m, c] : t_) {
            int s = 0;
            for (int e : m) s += e;
            if (s != 1) return false;
        }
        return true;
    }

    /// Coefficient of x_i in a linear form.
    K linear_coeff(int i) const {
        Monomial m(i + 1, 0);
        m[i] = 1;
        auto it = t_.find(m);
        return it == t_.end() ? K{} : it->second;
    }

    MPoly operator-() const {
        MPoly r;
        for (auto& [m, c] : t_) r.t_.emplace_hint(r.t_.end(), m, -c);
        return r;
    }
    MPoly& operator+=(const MPoly& o) {
        for (auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) {
                Monomial m(std::max(ma.size(), mb.size()), 0);
                for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
                for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
                r.add_term(std::move(m), ca * cb);
            }
        return r;
    }
    friend MPoly operator*(const K& s, const MPoly& a) {
        MPoly r;
        if (s.is_zero()) return r;
        for (auto& [m, c] : a.t_) r.t_.emplace_hint(r.t_.end(), m, s * c);
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend bool operator==(const MPoly& a, const MPoly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        return std::equal(a.t_.begin(), a.t_.end(), b.t_.begin(),
                          [](auto& x, auto& y) { return x.first == y.first && x.second == y.second; });
    }

    std::string to_string() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : t_) {
            if (!first) os << " + ";
            first = false;
            os << c.to_string();
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                os << "*x" << i;
                if (m[i] > 1) os << "^" << m[i];
            }
        }
        return os.str();
    }

private:
    term_map t_;
};

/// Scalar action k x R -> R.  For R = k this is ordinary multiplication.
template <FieldElement K>
K scale(const K& s, const K& r) {
    return s * r;
}
template <FieldElement K, class R>
R scale(const K& s, const R& r) {
    return s * r;
}

}  // namespace rlm
