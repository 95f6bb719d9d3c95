#include <gtest/gtest.h>

#include "rlm/closed_forms.hpp"
#include "rlm/lattice.hpp"

using namespace rlm;

class OddRank : public ::testing::TestWithParam<int> {};

TEST_P(OddRank, TypeN1Decoding) {
    int n = GetParam();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            auto S = type_n1_set(n, i, j);
            auto t = decode_type_n1(S);
            EXPECT_EQ(t.i, i);
            EXPECT_EQ(t.j, j);
            // S⊥ has i' = j∨, j' = i∨
            auto P = decode_type_n1(S.perp());
            EXPECT_EQ(P.i, dual_index(n, j));
            EXPECT_EQ(P.j, dual_index(n, i));
        }
    EXPECT_THROW(decode_type_n1(IndexSet::range(n, 1, n)), std::invalid_argument);
}

TEST_P(OddRank, NineCasesPartitionOrderedPairs) {
    int n = GetParam();
    int pairs = 0;
    for (auto& S : enumerate_type(n, n - 1, 1)) {
        if (!precedes_perp(S)) continue;
        ++pairs;
        auto [i, j] = decode_type_n1(S);
        auto preds = nine_case_predicates(n, i, j);
        int fired = 0, which = 0;
        for (int c = 0; c < 9; ++c)
            if (preds[c]) {
                ++fired;
                which = c + 1;
            }
        EXPECT_EQ(fired, 1) << S.to_string();
        EXPECT_EQ(nine_case(n, i, j), which) << S.to_string();
    }
    EXPECT_EQ(pairs, n * (n + 1) / 2);
}

TEST_P(OddRank, SixCaseTableMatchesEngine) {
    PrimeField k(13);
    int n = GetParam();
    WedgeFactory<PrimeField> fac(k, n);
    for (auto& S : enumerate_type(n, n - 1, 1)) {
        auto [wt, v] = worst_terms(fac.g_e(S));
        EXPECT_EQ(wt, closed_wt_g(k, S)) << S.to_string();
    }
}

TEST_P(OddRank, NineCaseTableMatchesEngine) {
    PrimeField k(13);
    int n = GetParam();
    WedgeFactory<PrimeField> fac(k, n);
    for (auto& S : enumerate_type(n, n - 1, 1)) {
        if (!precedes_perp(S)) continue;
        auto diff = signed_combination(fac.g_e(S), fac.g_e(S.perp()), -sigma_sign_closed(S));
        auto [wt, v] = worst_terms(diff);
        EXPECT_EQ(wt, closed_wt_pair(k, S)) << S.to_string();
    }
}

TEST_P(OddRank, TablesHoldOverTheRationals) {
    RationalField q;
    int n = GetParam();
    WedgeFactory<RationalField> fac(q, n);
    for (auto& S : enumerate_type(n, n - 1, 1)) {
        EXPECT_EQ(worst_terms(fac.g_e(S)).first, closed_wt_g(q, S));
        if (!precedes_perp(S)) continue;
        auto diff = signed_combination(fac.g_e(S), fac.g_e(S.perp()), -sigma_sign_closed(S));
        EXPECT_EQ(worst_terms(diff).first, closed_wt_pair(q, S));
    }
}

TEST_P(OddRank, ScaledGeneratorsArePrimitive) {
    PrimeField k(13);
    int n = GetParam();
    WedgeFactory<PrimeField> fac(k, n);
    for (auto& S : enumerate_type(n, n - 1, 1)) {
        if (!precedes_perp(S)) continue;
        auto [i, j] = decode_type_n1(S);
        auto diff = signed_combination(fac.g_e(S), fac.g_e(S.perp()), -sigma_sign_closed(S));
        int v = worst_terms(diff).second;
        EXPECT_EQ(v + scaled_generator_exponent(n, nine_case(n, i, j)), 0) << S.to_string();
    }
}

TEST_P(OddRank, FamilySizes) {
    PrimeField k(13);
    int n = GetParam();
    auto fams = corollary_families(k, n);
    EXPECT_EQ(static_cast<int>(fams.size()), n * (n + 1) / 2);
    for (auto& [mem, v] : fams) {
        EXPECT_FALSE(v.empty());
        for (auto& [S, c] : v) EXPECT_EQ(S.size(), n);
    }
    EXPECT_EQ(static_cast<int>(n_lemma_elements(k, n).size()), n);
}

INSTANTIATE_TEST_SUITE_P(Ranks, OddRank, ::testing::Values(3, 5, 7));

TEST(ClosedForms, X4DetectingSet) {
    EXPECT_EQ(x4_detecting_set(3), IndexSet(3, {2, 4, 6}));
    EXPECT_EQ(x4_detecting_set(5), IndexSet(5, {3, 6, 7, 9, 10}));
}
