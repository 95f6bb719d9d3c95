#include <gtest/gtest.h>

#include <random>

#include "rlm/errors.hpp"
#include "rlm/field.hpp"
#include "rlm/pi_laurent.hpp"
#include "rlm/rings.hpp"

using namespace rlm;

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

}  // namespace

TEST(PrimeField, ArithmeticMatchesIntegerResidues) {
    for (std::int64_t p : {3, 13, 101, 2147483647}) {
        PrimeField k(static_cast<std::uint32_t>(p));
        std::mt19937_64 rng(p);
        for (int t = 0; t < 200; ++t) {
            std::int64_t a = static_cast<std::int64_t>(rng() % 4000000) - 2000000;
            std::int64_t b = static_cast<std::int64_t>(rng() % 4000000) - 2000000;
            EXPECT_EQ(k(a) + k(b), k(mod(a + b, p)));
            EXPECT_EQ(k(a) - k(b), k(mod(a - b, p)));
            EXPECT_EQ(k(a) * k(b), k(mod(mod(a, p) * mod(b, p) % p, p)));
            if (mod(a, p) != 0) {
                EXPECT_EQ(k(a) * k(a).inv(), k.one());
            }
        }
    }
}

TEST(PrimeField, HalfAndSignedRepresentative) {
    PrimeField k(13);
    EXPECT_EQ(k.half() * k(2), k.one());
    EXPECT_EQ(k(12).signed_value(), -1);
    EXPECT_EQ(k(6).signed_value(), 6);
    EXPECT_EQ(k.characteristic(), 13u);
}

TEST(PrimeField, RejectsBadModulus) {
    EXPECT_THROW(PrimeField(2), std::invalid_argument);
    EXPECT_THROW(PrimeField(15), std::invalid_argument);
    EXPECT_THROW(PrimeField(1), std::invalid_argument);
}

TEST(PrimeField, MixingFieldsThrows) {
    PrimeField a(13), b(17);
    EXPECT_THROW(a(1) + b(1), FieldMismatch);
    EXPECT_THROW(a(2) * b(3), FieldMismatch);
    EXPECT_THROW(a.zero().inv(), std::domain_error);
}

TEST(PrimeField, UnboundZeroAdoptsModulus) {
    PrimeField k(13);
    Fp z;
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z + k(5), k(5));
}

TEST(Rational, ExactArithmetic) {
    RationalField q;
    auto a = Rational(1, 3), b = Rational(1, 6);
    EXPECT_EQ(a + b, q.half());
    EXPECT_EQ((a * b).inv(), q(18));
    EXPECT_EQ(q.half().to_string(), "1/2");
}

TEST(SignPower, Parity) {
    PrimeField k(13);
    EXPECT_EQ(sign_power(k, 0), k.one());
    EXPECT_EQ(sign_power(k, 3), -k.one());
    EXPECT_EQ(sign_power(k, -2), k.one());
}

// Laurent product against a dense convolution oracle.
TEST(PiLaurent, ProductMatchesConvolution) {
    PrimeField k(13);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        int lo_a = static_cast<int>(rng() % 7) - 3, lo_b = static_cast<int>(rng() % 7) - 3;
        std::vector<std::int64_t> ca(5), cb(4);
        PiLaurent<Fp> a, b;
        for (int i = 0; i < 5; ++i) {
            ca[i] = static_cast<std::int64_t>(rng() % 13);
            a.add_term(lo_a + i, k(ca[i]));
        }
        for (int i = 0; i < 4; ++i) {
            cb[i] = static_cast<std::int64_t>(rng() % 13);
            b.add_term(lo_b + i, k(cb[i]));
        }
        auto c = a * b;
        for (int e = lo_a + lo_b - 1; e <= lo_a + lo_b + 9; ++e) {
            std::int64_t s = 0;
            for (int i = 0; i < 5; ++i) {
                int j = e - lo_a - lo_b - i;
                if (j >= 0 && j < 4) s += ca[i] * cb[j];
            }
            EXPECT_EQ(c.coeff(e), k(s % 13)) << "exponent " << e;
        }
    }
}

TEST(PiLaurent, OrdShiftTruncate) {
    PrimeField k(13);
    auto x = PiLaurent<Fp>::monomial(-2, k(3)) + PiLaurent<Fp>::monomial(4, k(1));
    EXPECT_EQ(x.ord(), -2);
    EXPECT_EQ(x.shifted(5).ord(), 3);
    EXPECT_EQ(x.truncated(0), PiLaurent<Fp>::monomial(-2, k(3)));
    EXPECT_EQ(PiLaurent<Fp>{}.ord(), kInfOrd);
    EXPECT_TRUE((x - x).is_zero());
}

TEST(PiSeries, PrecisionRuleForProducts) {
    PrimeField k(13);
    // a = π + O(π^5), b = π^2 + O(π^4): error O(π^min(5+2, 4+1)) = O(π^5)
    PiSeries<Fp> a(PiLaurent<Fp>::monomial(1, k(1)), 5), b(PiLaurent<Fp>::monomial(2, k(1)), 4);
    auto c = a * b;
    EXPECT_EQ(c.precision(), 5);
    EXPECT_EQ(c.ord(), 3);
    PiSeries<Fp> exact(PiLaurent<Fp>::monomial(-1, k(2)));
    EXPECT_EQ((a * exact).precision(), 4);
    EXPECT_EQ((a + b).precision(), 4);
}

TEST(PiSeries, IndeterminateValuationThrows) {
    PrimeField k(13);
    PiSeries<Fp> a(PiLaurent<Fp>::monomial(7, k(1)), 5);
    EXPECT_TRUE(a.body_zero());
    EXPECT_THROW((void)a.ord(), PrecisionError);
    EXPECT_EQ(a.ord_lower_bound(), 5);
    EXPECT_EQ(PiSeries<Fp>(PiLaurent<Fp>{}).ord(), kInfOrd);
}

TEST(PiSeries, TruncatedInverse) {
    PrimeField k(13);
    auto u = PiLaurent<Fp>::monomial(0, k(3)) + PiLaurent<Fp>::monomial(1, k(5)) + PiLaurent<Fp>::monomial(3, k(1));
    auto inv = truncated_inverse(u, 12);
    auto prod = PiSeries<Fp>(u) * inv;
    EXPECT_EQ(prod, PiSeries<Fp>(PiLaurent<Fp>(k.one())));
    EXPECT_EQ(inv.precision(), 12);
    auto mono = truncated_inverse(PiLaurent<Fp>::monomial(-2, k(4)), 12);
    EXPECT_TRUE(mono.exact());
    EXPECT_EQ(mono.body(), PiLaurent<Fp>::monomial(2, k(4).inv()));
}

TEST(DualNumbers, EpsilonSquaresToZero) {
    PrimeField k(13);
    Dual<Fp> x(k.zero(), k.one()), a(k(2), k(3));
    EXPECT_TRUE((x * x).is_zero());
    EXPECT_EQ(a * a, Dual<Fp>(k(4), k(12)));
}

TEST(Polynomials, ArithmeticAndLinearity) {
    PrimeField k(13);
    auto x = MPoly<Fp>::variable(0, k.one()), y = MPoly<Fp>::variable(1, k.one());
    auto p = (x + y) * (x - y);
    EXPECT_EQ(p, x * x - y * y);
    EXPECT_EQ(p.total_degree(), 2);
    EXPECT_FALSE(p.is_homogeneous_linear());
    auto l = scale(k(3), x) - y;
    EXPECT_TRUE(l.is_homogeneous_linear());
    EXPECT_EQ(l.linear_coeff(0), k(3));
    EXPECT_EQ(l.linear_coeff(1), k(-1));
    EXPECT_FALSE((l + MPoly<Fp>(k.one())).is_homogeneous_linear());
}
