#include <gtest/gtest.h>

#include "rlm/drivers.hpp"

using namespace rlm;

TEST(Drivers, SignLemma) {
    auto c = verify_sign_lemma(6);
    EXPECT_TRUE(c.passed()) << c.to_json().dump();
    EXPECT_EQ(c.evidence["per_n"].back()["subsets"], 924);
    EXPECT_THROW(verify_sign_lemma(7), DriverPrecondition);
    EXPECT_THROW(verify_sign_lemma(1), DriverPrecondition);
}

TEST(Drivers, WorstTermTables) {
    PrimeField k(13);
    for (int n : {3, 5, 7}) {
        auto c = verify_worst_term_tables(k, n);
        EXPECT_TRUE(c.passed()) << c.to_json().dump();
        EXPECT_EQ(c.evidence["ordered_pairs"], n * (n + 1) / 2);
        EXPECT_EQ(c.evidence["case4_worst_valuation"], -(n / 2));
    }
    EXPECT_THROW(verify_worst_term_tables(k, 4), DriverPrecondition);
}

TEST(Drivers, RefinedBasis) {
    PrimeField k(13);
    for (int n : {3, 5}) {
        auto c = verify_refined_basis(k, n);
        EXPECT_TRUE(c.passed()) << c.to_json().dump();
    }
    EXPECT_TRUE(verify_refined_basis(RationalField{}, 3).passed());
}

TEST(Drivers, SpinStructure) {
    PrimeField k(13);
    auto c = verify_spin_structure(k, 5);
    EXPECT_TRUE(c.passed()) << c.to_json().dump();
    EXPECT_EQ(c.evidence["eps=+1"]["generators"], 126);
}

TEST(Drivers, Counterexample) {
    PrimeField k(13);
    auto c = run_counterexample(k, 5);
    EXPECT_TRUE(c.passed()) << c.to_json().dump();
    EXPECT_EQ(c.evidence["verdicts"]["refined"]["verdict"], "fail");
    EXPECT_EQ(c.evidence["verdicts"]["spin(-1)"]["verdict"], "pass");
    EXPECT_THROW(run_counterexample(k, 3), DriverPrecondition);
    EXPECT_THROW(run_counterexample(k, 4), DriverPrecondition);
    // another characteristic
    EXPECT_TRUE(run_counterexample(PrimeField(7), 5).passed());
}

TEST(Drivers, X1Zero) {
    PrimeField k(13);
    auto c3 = verify_x1_zero(k, 3);
    EXPECT_TRUE(c3.passed()) << c3.to_json().dump();
    EXPECT_EQ(c3.evidence["rank_combined"], 4);
    auto c5 = verify_x1_zero(k, 5);
    EXPECT_TRUE(c5.passed()) << c5.to_json().dump();
    EXPECT_EQ(c5.evidence["rank_combined"], 16);
    // symmetry relations alone leave nonzero solutions
    EXPECT_GT(c5.evidence["symmetry_alone_deficit"].get<int>(), 0);
    EXPECT_THROW(verify_x1_zero(k, 7), DriverPrecondition);
}

TEST(Drivers, OperatorIdentities) {
    PrimeField k(13);
    auto c = verify_operator_identities(k, 3, 2, 1);
    EXPECT_TRUE(c.passed()) << c.to_json().dump();
    EXPECT_GT(c.evidence["annihilation_checks"].get<int>(), 0);
    EXPECT_TRUE(verify_operator_identities(k, 5, 3, 2).passed());
    EXPECT_TRUE(verify_operator_identities(k, 4, 4, 0).passed());
    EXPECT_THROW(verify_operator_identities(k, 4, 2, 2), DriverPrecondition);
    EXPECT_THROW(verify_operator_identities(k, 3, 1, 1), DriverPrecondition);
}

TEST(Drivers, OperatorScalarAtZero) {
    // T = 0 on W^{2,1}: (π)²(-π) = -π³ on every g-frame basis wedge
    PrimeField k(13);
    using L = PiLaurent<Fp>;
    int n = 3;
    auto g = build_frame(k, FrameKind::g_split, n);
    auto op = scalar_matrix(2 * n, L{}) - pi_tensor_one_matrix(n, k.one());
    for (auto& S : enumerate_type(n, 2, 1)) {
        auto w = basis_wedge(g, S);
        EXPECT_EQ(apply_wedge_power_operator(op, w), w.scaled(L::monomial(3, -k.one())));
    }
}

TEST(Drivers, Implications) {
    PrimeField k(13);
    auto c = verify_implications(k, 3, 7, 200);
    EXPECT_TRUE(c.passed()) << c.to_json().dump();
    for (auto ring : {"field", "dual", "poly"}) EXPECT_EQ(c.evidence[ring]["points"], 200);
    // same seed, same certificate
    EXPECT_EQ(verify_implications(k, 3, 7, 50).to_json(), verify_implications(k, 3, 7, 50).to_json());
}

TEST(Drivers, CertificateShape) {
    auto j = verify_worst_term_tables(PrimeField(13), 3).to_json();
    for (auto key : {"result", "parameters", "verdict", "evidence"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["parameters"]["p"], 13);
    EXPECT_EQ(j["parameters"]["precision"], kDefaultPrecision);
}
