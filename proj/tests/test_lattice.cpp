#include <gtest/gtest.h>

#include "rlm/closed_forms.hpp"
#include "rlm/lattice.hpp"

using namespace rlm;

namespace {

using Col = std::map<IndexSet, PiLaurent<Fp>>;

long binomial(int a, int b) {
    long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

std::vector<Col> columns_of(const DVRTriangularBasis<Fp>& b) {
    std::vector<Col> out;
    for (auto& c : b.columns) out.push_back(c.terms);
    return out;
}

// generator rescaled to minimum valuation 0
Col primitive(const WedgeVector<PiLaurent<Fp>>& g) {
    int v = worst_terms(g).second;
    Col c;
    for (auto& [S, x] : g.terms) c.emplace(S, x.shifted(-v));
    return c;
}

// The reduced basis is integral, saturated (independent mod π), inside the
// F-span of the generators, and has the same rank: it is a basis of span ∩ W(Λ).
void expect_basis_of_intersection(const WedgeFactory<PrimeField>& fac, const LatticeSpec& spec) {
    auto gens = spanning_set(fac, spec);
    auto d = compute_lattice(fac, spec, kDefaultPrecision);
    ASSERT_EQ(d.basis.columns.size(), gens.size()) << spec.to_string();
    std::vector<Col> gcols;
    for (auto& g : gens) gcols.push_back(g.terms);
    std::set<IndexSet> pivots;
    for (auto& c : d.basis.columns) {
        EXPECT_EQ(c.min_valuation(), 0);
        EXPECT_EQ(c.terms.at(c.pivot).ord(), 0);
        pivots.insert(c.pivot);
        EXPECT_TRUE(solve_in_span(gcols, c.terms, kDefaultPrecision).has_value()) << spec.to_string();
    }
    EXPECT_EQ(pivots.size(), d.basis.columns.size());
    EXPECT_EQ(echelon(d.residue).rank(), static_cast<int>(d.basis.columns.size()));
    std::vector<Col> prim;
    for (auto& g : gens) prim.push_back(primitive(g));
    EXPECT_TRUE(lattice_contains_all(columns_of(d.basis), prim, kDefaultPrecision)) << spec.to_string();
}

}  // namespace

TEST(Lattice, SpinRanksAreHalfTheMiddleBinomial) {
    PrimeField k(13);
    for (int n : {2, 3, 4, 5}) {
        WedgeFactory<PrimeField> fac(k, n);
        for (int eps : {1, -1}) {
            auto d = compute_lattice(fac, LatticeSpec::spin(n, eps));
            EXPECT_EQ(static_cast<long>(d.basis.columns.size()), binomial(2 * n, n) / 2) << n << " " << eps;
            EXPECT_EQ(static_cast<long>(d.ann.functionals.size()), binomial(2 * n, n) / 2);
        }
    }
}

TEST(Lattice, RefinedRankForSignatureN1) {
    PrimeField k(13);
    for (int n : {3, 5, 7}) {
        WedgeFactory<PrimeField> fac(k, n);
        auto d = compute_lattice(fac, LatticeSpec::refined(n, -1, n - 1, 1));
        EXPECT_EQ(static_cast<int>(d.basis.columns.size()), n * (n + 1) / 2);
        EXPECT_EQ(d.generator_count, n * (n + 1) / 2);
    }
}

TEST(Lattice, BasisIsTheSaturatedIntersection) {
    PrimeField k(13);
    for (int n : {3, 5}) {
        WedgeFactory<PrimeField> fac(k, n);
        expect_basis_of_intersection(fac, LatticeSpec::spin(n, 1));
        expect_basis_of_intersection(fac, LatticeSpec::spin(n, -1));
        expect_basis_of_intersection(fac, LatticeSpec::refined(n, -1, n - 1, 1));
        expect_basis_of_intersection(fac, LatticeSpec::refined(n, 1, n - 2, 2));
    }
}

TEST(Lattice, KlGeneratorsSpanExpectedRank) {
    PrimeField k(13);
    int n = 3;
    WedgeFactory<PrimeField> fac(k, n);
    for (int l = 1; l <= n; ++l) {
        auto spec = LatticeSpec::kl(n, l, n - 1, 1);
        auto gens = spanning_set(fac, spec);
        auto d = compute_lattice(fac, spec);
        EXPECT_EQ(d.basis.columns.size(), gens.size());
        // ^l W^{n-1,1}: g_T with at most n-1 indices from the -π block and at most one from the +π block
        long expect = (l <= n - 1 ? binomial(n, l) : 0) + binomial(n, l - 1) * n;
        EXPECT_EQ(static_cast<long>(gens.size()), expect) << l;
    }
}

TEST(Lattice, AnnihilatorsCutOutTheResidueSpan) {
    PrimeField k(13);
    int n = 5;
    WedgeFactory<PrimeField> fac(k, n);
    auto d = compute_lattice(fac, LatticeSpec::refined(n, -1, n - 1, 1));
    EXPECT_EQ(d.ann.tracked, binomial(2 * n, n));
    EXPECT_EQ(static_cast<long>(d.ann.functionals.size()), binomial(2 * n, n) - n * (n + 1) / 2);
    for (auto& v : d.residue) {
        WedgeVector<Fp> w{n, n, BasisTag::e_basis, {}};
        for (auto& [S, c] : v) w.add(S, c);
        EXPECT_TRUE(membership_over_R(w, d.ann).pass);
    }
    // a coordinate vector outside the span is caught, with a witness
    WedgeVector<Fp> bad{n, n, BasisTag::e_basis, {}};
    bad.add(x4_detecting_set(n), k.one());
    auto m = membership_over_R(bad, d.ann);
    EXPECT_FALSE(m.pass);
    EXPECT_TRUE(m.witness.has_value());
}

TEST(Lattice, DeterministicAndFieldIndependentShape) {
    PrimeField k(13), k2(101);
    RationalField q;
    int n = 5;
    WedgeFactory<PrimeField> fac(k, n), fac2(k2, n);
    WedgeFactory<RationalField> facq(q, n);
    auto spec = LatticeSpec::refined(n, -1, n - 1, 1);
    auto a = compute_lattice(fac, spec), b = compute_lattice(fac, spec);
    ASSERT_EQ(a.basis.columns.size(), b.basis.columns.size());
    for (std::size_t i = 0; i < a.basis.columns.size(); ++i) {
        EXPECT_EQ(a.basis.columns[i].pivot, b.basis.columns[i].pivot);
        EXPECT_EQ(a.basis.columns[i].terms, b.basis.columns[i].terms);
    }
    auto c = compute_lattice(fac2, spec);
    auto r = compute_lattice(facq, spec);
    ASSERT_EQ(r.basis.columns.size(), a.basis.columns.size());
    for (std::size_t i = 0; i < a.basis.columns.size(); ++i) {
        EXPECT_EQ(a.basis.columns[i].pivot, c.basis.columns[i].pivot);
        EXPECT_EQ(a.basis.columns[i].pivot, r.basis.columns[i].pivot);
    }
}

TEST(Lattice, PrecisionAtGuardBandIsRejected) {
    PrimeField k(13);
    WedgeFactory<PrimeField> fac(k, 3);
    EXPECT_THROW(compute_lattice(fac, LatticeSpec::spin(3, 1), kGuardBand), PrecisionError);
}

TEST(Lattice, SpecValidation) {
    EXPECT_THROW(LatticeSpec::spin(3, 2).validate(), std::invalid_argument);
    EXPECT_THROW(LatticeSpec::refined(3, 1, 2, 2).validate(), std::invalid_argument);
    EXPECT_THROW(LatticeSpec::kl(3, 4, 2, 1).validate(), std::invalid_argument);
}

TEST(SpanOracle, RecoversKnownCoordinates) {
    PrimeField k(13);
    using L = PiLaurent<Fp>;
    IndexSet a(2, {1, 2}), b(2, {1, 3}), c(2, {3, 4});
    std::vector<Col> B{{{a, L::monomial(0, k(1))}, {b, L::monomial(1, k(2))}}, {{b, L::monomial(-1, k(1))}, {c, L::monomial(0, k(3))}}};
    // v = π B0 + 2 B1
    Col v{{a, L::monomial(1, k(1))}, {b, L::monomial(2, k(2)) + L::monomial(-1, k(2))}, {c, L::monomial(0, k(6))}};
    auto x = solve_in_span(B, v, 20);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ((*x)[0], PiSeries<Fp>(L::monomial(1, k(1))));
    EXPECT_EQ((*x)[1], PiSeries<Fp>(L::monomial(0, k(2))));
    Col outside{{IndexSet(2, {2, 4}), L(k.one())}};
    EXPECT_FALSE(solve_in_span(B, outside, 20).has_value());
    EXPECT_FALSE(lattice_contains_all(B, {Col{{a, L::monomial(-1, k(1))}, {b, L(k(2))}}}, 20));
}
