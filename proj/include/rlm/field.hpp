#pragma once

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace rlm {

/// Element of the prime field F_p.  Every element remembers its modulus so that
/// mixing fields is caught at the operation.  A default-constructed element is
/// an unbound zero and adopts the modulus of whatever it is combined with.
class Fp {
public:
    Fp() = default;
    Fp(std::int64_t value, std::uint32_t p) : p_(p) {
        auto r = value % static_cast<std::int64_t>(p);
        v_ = static_cast<std::uint64_t>(r < 0 ? r + p : r);
    }

    std::uint64_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    /// Symmetric representative in (-p/2, p/2], used for readable output.
    std::int64_t signed_value() const {
        auto v = static_cast<std::int64_t>(v_);
        return v > static_cast<std::int64_t>(p_ / 2) ? v - p_ : v;
    }

    Fp operator-() const { return Fp{v_ == 0 ? 0 : p_ - v_, p_, raw_tag{}}; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        auto p = common(a, b);
        auto s = a.v_ + b.v_;
        return Fp{s >= p ? s - p : s, p, raw_tag{}};
    }
    friend Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }
    friend Fp operator*(const Fp& a, const Fp& b) {
        auto p = common(a, b);
        return Fp{p == 0 ? 0 : (a.v_ * b.v_) % p, p, raw_tag{}};
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    friend bool operator==(const Fp& a, const Fp& b) {
        if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_) return false;
        return a.v_ == b.v_;
    }

    Fp inv() const {
        if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
        // p is prime: a^(p-2)
        std::uint64_t result = 1, base = v_, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return Fp{result, p_, raw_tag{}};
    }

    std::string to_string() const { return std::to_string(signed_value()); }
    friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.to_string(); }

private:
    struct raw_tag {};
    Fp(std::uint64_t v, std::uint32_t p, raw_tag) : v_(v), p_(p) {}

    static std::uint32_t common(const Fp& a, const Fp& b) {
        if (a.p_ == 0) return b.p_;
        if (b.p_ == 0 || a.p_ == b.p_) return a.p_;
        throw FieldMismatch("F_" + std::to_string(a.p_) + " vs F_" + std::to_string(b.p_));
    }

    std::uint64_t v_ = 0;
    std::uint32_t p_ = 0;
};

/// Exact rational number.
class Rational {
public:
    using value_type = boost::multiprecision::cpp_rational;

    Rational() = default;
    explicit Rational(std::int64_t v) : q_(v) {}
    Rational(std::int64_t num, std::int64_t den) : q_(value_type(num) / value_type(den)) {}
    explicit Rational(value_type q) : q_(std::move(q)) {}

    const value_type& value() const { return q_; }
    bool is_zero() const { return q_ == 0; }

    Rational operator-() const { return Rational(value_type(-q_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(value_type(a.q_ + b.q_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(value_type(a.q_ - b.q_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(value_type(a.q_ * b.q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

    Rational inv() const {
        if (q_ == 0) throw std::domain_error("inverse of zero in Q");
        return Rational(value_type(1 / q_));
    }

    std::string to_string() const {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        auto den = denominator(q_);
        if (den == 1) return numerator(q_).str();
        return numerator(q_).str() + "/" + den.str();
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& a) { return os << a.to_string(); }

private:
    value_type q_ = 0;
};

template <class K>
concept FieldElement = std::regular<K> && requires(const K a, const K b) {
    { a + b } -> std::same_as<K>;
    { a - b } -> std::same_as<K>;
    { a * b } -> std::same_as<K>;
    { -a } -> std::same_as<K>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.inv() } -> std::same_as<K>;
    { a.to_string() } -> std::convertible_to<std::string>;
};

inline bool is_odd_prime(std::uint64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

/// The residue field k = F_p, p an odd prime.
class PrimeField {
public:
    using element_type = Fp;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_odd_prime(p))
            throw std::invalid_argument("modulus must be an odd prime, got " + std::to_string(p));
        if (p >= (1u << 31)) throw std::invalid_argument("modulus must be below 2^31");
    }

    Fp operator()(std::int64_t v) const { return Fp(v, p_); }
    Fp zero() const { return Fp(0, p_); }
    Fp one() const { return Fp(1, p_); }
    /// 1/2, which exists because the characteristic is odd.
    Fp half() const { return Fp(2, p_).inv(); }
    std::uint32_t characteristic() const { return p_; }
    std::string name() const { return "F_" + std::to_string(p_); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

/// The residue field k = Q (cross-check mode).
class RationalField {
public:
    using element_type = Rational;

    Rational operator()(std::int64_t v) const { return Rational(v); }
    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational half() const { return Rational(1, 2); }
    std::uint32_t characteristic() const { return 0; }
    std::string name() const { return "Q"; }

    friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class F>
concept BaseField = FieldElement<typename F::element_type> && requires(const F f, std::int64_t v) {
    { f(v) } -> std::same_as<typename F::element_type>;
    { f.zero() } -> std::same_as<typename F::element_type>;
    { f.one() } -> std::same_as<typename F::element_type>;
    { f.half() } -> std::same_as<typename F::element_type>;
    { f.characteristic() } -> std::convertible_to<std::uint32_t>;
};

/// (-1)^e as a field element.
template <BaseField F>
typename F::element_type sign_power(const F& k, long long e) {
    return (e % 2 == 0) ? k.one() : -k.one();
}

}  // namespace rlm
