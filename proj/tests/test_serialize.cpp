#include <gtest/gtest.h>

#include "rlm/drivers.hpp"
#include "rlm/serialize.hpp"

using namespace rlm;

namespace {

Json dual_point_json(int n) {
    Json X = Json::array();
    for (int i = 0; i < n * n; ++i) X.push_back(Json::array({0, 0}));
    return {{"n", n}, {"p", 13}, {"signature", {n - 1, 1}}, {"ring", {{"kind", "dual"}}}, {"X", X}};
}

template <class Fn>
std::string schema_message(Fn&& fn) {
    try {
        fn();
    } catch (const SchemaError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Serialize, Scalars) {
    PrimeField k(13);
    EXPECT_EQ(scalar_json(k(12)), -1);
    EXPECT_EQ(scalar_json(Rational(3, 4)), "3/4");
    EXPECT_EQ(scalar_json(Rational(-5)), -5);
    auto x = PiLaurent<Fp>::monomial(-2, k(3)) + PiLaurent<Fp>::monomial(1, k(1));
    EXPECT_EQ(to_json(x), Json::parse("[[-2,3],[1,1]]"));
    EXPECT_EQ(to_json(IndexSet(3, {6, 1, 4})), Json::parse("[1,4,6]"));
}

TEST(Serialize, WedgeVector) {
    PrimeField k(13);
    WedgeVector<PiLaurent<Fp>> w{2, 2, BasisTag::e_basis, {}};
    w.add(IndexSet(2, {1, 3}), PiLaurent<Fp>::monomial(0, k(2)));
    auto j = to_json(w);
    EXPECT_EQ(j["basis"], "e_basis");
    EXPECT_EQ(j["terms"][0]["indexSet"], Json::parse("[1,3]"));
    EXPECT_EQ(j["terms"][0]["coefficient"], Json::parse("[[0,2]]"));
}

TEST(Serialize, ChartPointRoundTrip) {
    PrimeField k(13);
    auto pt = counterexample_point(k, 5);
    auto j = chart_point_json(pt);
    auto back = parse_chart_point(k, j);
    ASSERT_TRUE(std::holds_alternative<ChartPoint<DualRing<PrimeField>>>(back));
    auto& q = std::get<ChartPoint<DualRing<PrimeField>>>(back);
    EXPECT_EQ(q.X.a, pt.X.a);
    EXPECT_EQ(chart_point_json(q), j);

    PolyRing<PrimeField> R{k, {"t", "u"}};
    ChartPoint<PolyRing<PrimeField>> pp(R, 3, {2, 1});
    pp.X(2, 0) = R.var(0) * R.var(1) + MPoly<Fp>(k(4));
    auto jp = chart_point_json(pp);
    auto bp = std::get<ChartPoint<PolyRing<PrimeField>>>(parse_chart_point(k, jp));
    EXPECT_EQ(bp.X.a, pp.X.a);
    EXPECT_EQ(bp.ring.variables, R.variables);
}

TEST(Serialize, FlatAndNestedMatricesAgree) {
    PrimeField k(13);
    Json flat = {{"n", 3}, {"p", 13}, {"signature", {2, 1}}, {"ring", {{"kind", "field"}}}, {"X", {0, 0, 0, 0, 0, 0, 1, 2, 0}}};
    Json nested = flat;
    nested["X"] = Json::parse("[[0,0,0],[0,0,0],[1,2,0]]");
    auto a = std::get<0>(parse_chart_point(k, flat)), b = std::get<0>(parse_chart_point(k, nested));
    EXPECT_EQ(a.X.a, b.X.a);
    EXPECT_EQ(a.X(2, 1), k(2));
}

TEST(Serialize, SchemaErrorsNameTheField) {
    PrimeField k(13);
    auto j = dual_point_json(3);
    j["X"][4] = Json::array({0, "x"});
    EXPECT_NE(schema_message([&] { parse_chart_point(k, j); }).find("X[1][1][1]"), std::string::npos);

    j = dual_point_json(3);
    j["X"][2] = 5;
    EXPECT_NE(schema_message([&] { parse_chart_point(k, j); }).find("X[0][2]"), std::string::npos);

    j = dual_point_json(3);
    j.erase("signature");
    EXPECT_NE(schema_message([&] { parse_chart_point(k, j); }).find("signature"), std::string::npos);

    j = dual_point_json(3);
    j["ring"]["kind"] = "quaternion";
    EXPECT_NE(schema_message([&] { parse_chart_point(k, j); }).find("ring.kind"), std::string::npos);

    j = dual_point_json(3);
    j["n"] = 4;
    EXPECT_NE(schema_message([&] { parse_chart_point(k, j); }).find("'n'"), std::string::npos);

    j = dual_point_json(3);
    j["p"] = 17;
    EXPECT_NE(schema_message([&] { parse_chart_point(k, j); }).find("'p'"), std::string::npos);

    Json poly = {{"n", 3}, {"p", 13}, {"signature", {2, 1}}, {"ring", {{"kind", "poly"}, {"variables", {"t"}}}},
                 {"X", Json::array()}};
    for (int i = 0; i < 9; ++i) poly["X"].push_back(Json::array());
    poly["X"][3] = Json::parse(R"([{"coeff": 1, "exponents": [1, 2]}])");
    EXPECT_NE(schema_message([&] { parse_chart_point(k, poly); }).find("X[1][0][0].exponents"), std::string::npos);
    poly["X"][3] = Json::parse(R"([{"exponents": [1]}])");
    EXPECT_NE(schema_message([&] { parse_chart_point(k, poly); }).find("X[1][0][0].coeff"), std::string::npos);
}

TEST(Serialize, BasisDumpIsDeterministic) {
    PrimeField k(13);
    WedgeFactory<PrimeField> fac(k, 5);
    auto spec = LatticeSpec::refined(5, -1, 4, 1);
    auto a = basis_json(k, compute_lattice(fac, spec)).dump();
    auto b = basis_json(k, compute_lattice(fac, spec)).dump();
    EXPECT_EQ(a, b);
    auto j = Json::parse(a);
    EXPECT_EQ(j["columns"].size(), 15u);
    EXPECT_EQ(j["residue"].size(), 15u);
    EXPECT_EQ(j["p"], 13);
    EXPECT_EQ(j["precision"], 24);
    EXPECT_TRUE(j["columns"][0].contains("pivotValuation"));
}

TEST(Serialize, ReportJson) {
    ConditionReport rep;
    rep.add("naive", Verdict::ok());
    rep.add("refined", Verdict::failed("value 2x"));
    rep.add("wedge", {Status::out_of_chart, "X2 or X4 nonzero"});
    auto j = report_to_json(rep);
    EXPECT_EQ(j["naive"]["verdict"], "pass");
    EXPECT_FALSE(j["naive"].contains("witness"));
    EXPECT_EQ(j["refined"]["witness"], "value 2x");
    EXPECT_EQ(j["wedge"]["verdict"], "out_of_translated_chart");
}
