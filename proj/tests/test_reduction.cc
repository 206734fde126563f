#include <tourhom/reduction.hh>
#include <tourhom/spectral.hh>

#include <gtest/gtest.h>

#include <random>

using namespace tourhom;

namespace
{
    auto toy_daggers() -> std::vector<RootedDigraph>
    {
        return toy_family(2).dagger;
    }

    // Random tournaments on which every toy gadget has a nonzero fourth necklace density.
    auto nondegenerate_hosts(const std::vector<RootedDigraph> & daggers, std::size_t count) -> std::vector<Tournament>
    {
        std::mt19937_64 rng{1};
        std::vector<Tournament> hosts;
        while (hosts.size() < count) {
            auto t = random_tournament(5 + rng() % 4, rng());
            auto d = necklace_densities(daggers, t.graph());
            if (d.t4[0] != 0 && d.t4[1] != 0)
                hosts.push_back(std::move(t));
        }
        return hosts;
    }

    auto poly(const std::string & text, int s) -> IntPolynomial
    {
        return parse_polynomial(text, s);
    }
}

TEST(Polynomial, ParseAndPrint)
{
    auto p = poly("3 x1^2 x2 - 2*x2 + 7", 2);
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p.coefficient_weight(), 12);
    std::vector<Rational> at{2, 5};
    EXPECT_EQ(p.evaluate(at), 3 * 4 * 5 - 10 + 7);
    EXPECT_EQ(parse_polynomial(to_string(p), 2), p);
    EXPECT_EQ(poly("x1 - x1", 1).is_zero(), true);
    EXPECT_EQ(parse_polynomial("x3").variables(), 3);
}

TEST(Polynomial, SyntaxErrors)
{
    EXPECT_THROW(parse_polynomial("x1 +"), PolynomialSyntaxError);
    EXPECT_THROW(parse_polynomial("x0"), PolynomialSyntaxError);
    EXPECT_THROW(parse_polynomial("x1 ^"), PolynomialSyntaxError);
    EXPECT_THROW(polynomial_from_json("{\"s\": 1, \"terms\": ["), std::exception);
}

TEST(Polynomial, JsonRoundTrip)
{
    auto p = poly("123456789012345678901234567890 x1 x2^3 - x2", 2);
    EXPECT_EQ(polynomial_from_json(polynomial_to_json(p)), p);
    EXPECT_EQ(polynomial_from_json(R"({"s":2,"terms":[{"coef":3,"exps":[2,1]}]})"), poly("3 x1^2 x2", 2));
}

TEST(PBar, Examples)
{
    auto single = build_pbar(poly("x1", 1));
    EXPECT_EQ(single.penalty, 100);
    EXPECT_FALSE(single.degenerate);
    EXPECT_EQ(single.poly, IntPolynomial(2, {{1, {7, 0}}, {100, {0, 1}}, {-100, {2, 0}}}));

    EXPECT_EQ(build_pbar(poly("x1 - x2", 2)).penalty, 200);
    EXPECT_EQ(build_pbar(poly("x1^2 x2 - 3", 2)).penalty, 1200);

    auto zero = build_pbar(IntPolynomial{1, {}});
    EXPECT_TRUE(zero.poly.is_zero());

    auto constant = build_pbar(IntPolynomial::constant(1, 5));
    EXPECT_TRUE(constant.degenerate);
    EXPECT_EQ(constant.penalty, 0);
}

TEST(PBar, MatchesDefinitionAtRandomPoints)
{
    std::mt19937_64 rng{3};
    auto p = poly("2 x1 x2 - x1^2 + 5 x2 - 1", 2);
    auto bar = build_pbar(p);
    for (int trial = 0 ; trial < 50 ; ++trial) {
        std::vector<Rational> xy(4);
        for (auto & v : xy)
            v = make_rational(static_cast<long>(rng() % 11) - 5, 1 + rng() % 6);
        std::vector<Rational> x{xy[0], xy[1]};
        Rational want = p.evaluate(x) * pow(xy[0], 6) * pow(xy[1], 6)
            + bar.penalty * (xy[2] - xy[0] * xy[0] + xy[3] - xy[1] * xy[1]);
        EXPECT_EQ(bar.poly.evaluate(xy), want);
    }
}

TEST(Quantum, MonomialLayout)
{
    auto necklaces = make_necklaces({build_F_dagger(toy_gadget())});
    const int bead = 7;
    EXPECT_EQ(necklaces.d4[0].size(), 4 * bead);
    EXPECT_EQ(necklaces.d12[0].size(), 12 * bead);

    const int x[] = {1}, y[] = {0}, clearing[] = {3};
    auto g = monomial_to_quantum(x, y, necklaces, clearing);
    EXPECT_EQ(g, disjoint_union(necklaces.d8[0], necklaces.d4[0]));

    const int y1[] = {1}, wide[] = {6};
    EXPECT_EQ(monomial_to_quantum(x, y1, necklaces, wide).size(), (8 + 12 + 4) * bead);
    EXPECT_THROW(monomial_to_quantum(x, y1, necklaces, clearing), ClearingExponentTooSmall);
}

TEST(Quantum, MonomialDensityFactorises)
{
    auto daggers = toy_daggers();
    auto necklaces = make_necklaces(daggers);
    const int x[] = {1, 0}, y[] = {0, 1}, clearing[] = {3, 4};
    auto g = monomial_to_quantum(x, y, necklaces, clearing);
    for (auto & host : nondegenerate_hosts(daggers, 3)) {
        auto d = necklace_densities(daggers, host.graph());
        EXPECT_EQ(density(g, host.graph()), d.t8[0] * d.t4[0] * d.t12[1] * d.t4[1]);
    }
}

TEST(Reduction, ClearingModes)
{
    auto necklaces = make_necklaces({build_F_dagger(toy_gadget())});
    auto p = poly("x1", 1);
    auto minimal = build_f_of_p(p, necklaces, ClearingMode::Minimal);
    EXPECT_EQ(minimal.clearing, std::vector<int>{14});
    EXPECT_EQ(minimal_clearing(minimal.pbar.poly), std::vector<int>{14});
    ASSERT_EQ(minimal.quantum.terms().size(), 3u);
    std::vector<Rational> coefs;
    for (auto & t : minimal.quantum.terms())
        coefs.push_back(t.coef);
    std::sort(coefs.begin(), coefs.end());
    EXPECT_EQ(coefs, (std::vector<Rational>{-100, 1, 100}));

    EXPECT_THROW(build_f_of_p(p, necklaces, ClearingMode::ThreeDegree), ClearingExponentTooSmall);
    const int low[] = {13}, high[] = {20};
    EXPECT_THROW(build_f_of_p(p, necklaces, ClearingMode::Explicit, low), ClearingExponentTooSmall);
    EXPECT_EQ(build_f_of_p(p, necklaces, ClearingMode::Explicit, high).clearing, std::vector<int>{20});
    EXPECT_THROW(build_f_of_p(poly("x1 x2", 2), necklaces, ClearingMode::Minimal), std::invalid_argument);
}

TEST(Reduction, ZeroPolynomialGivesZero)
{
    auto daggers = toy_daggers();
    auto r = build_f_of_p(IntPolynomial{2, {}}, make_necklaces(daggers), ClearingMode::Minimal);
    EXPECT_TRUE(r.quantum.empty());
    for (auto & host : nondegenerate_hosts(daggers, 2))
        EXPECT_EQ(eval_quantum(r.quantum, host.graph()), 0);
}

TEST(Reduction, IsLinear)
{
    auto daggers = toy_daggers();
    auto necklaces = make_necklaces(daggers);
    auto p = build_pbar(poly("x1 - 2 x2", 2)).poly, q = build_pbar(poly("x1 x2 + 1", 2)).poly;
    auto sum = p + q;
    auto clearing = minimal_clearing(sum);
    auto qp = quantum_from_polynomial(p, necklaces, clearing), qq = quantum_from_polynomial(q, necklaces, clearing);
    auto qs = quantum_from_polynomial(sum, necklaces, clearing);
    for (auto & host : nondegenerate_hosts(daggers, 3)) {
        Rational separate = eval_quantum(qp, host.graph()) + eval_quantum(qq, host.graph());
        EXPECT_EQ(eval_quantum(qs, host.graph()), separate);
    }
}

TEST(Reduction, EvaluationIdentityOnHosts)
{
    auto daggers = toy_daggers();
    auto necklaces = make_necklaces(daggers);
    auto hosts = nondegenerate_hosts(daggers, 5);
    for (auto text : {"x1 - x2", "x1^2 - 3 x2 + 1", "-x1 x2"}) {
        auto r = build_f_of_p(poly(text, 2), necklaces, ClearingMode::Minimal);
        for (auto & host : hosts)
            EXPECT_EQ(eval_quantum(r.quantum, host.graph()), reduction_right_side(r, necklace_densities(daggers, host.graph())))
                << text;
    }
}

TEST(Reduction, DegenerateHostsEvaluateToZero)
{
    auto daggers = toy_daggers();
    auto r = build_f_of_p(poly("x1 + x2", 2), make_necklaces(daggers), ClearingMode::Minimal);
    for (auto t : {transitive_tournament(4), transitive_tournament(6)}) {
        auto d = necklace_densities(daggers, t.graph());
        EXPECT_EQ(d.t4[0], 0);
        EXPECT_EQ(eval_quantum(r.quantum, t.graph()), 0);
        EXPECT_THROW(reduction_right_side(r, d), DegenerateHost);
    }
}

TEST(Reduction, SignDirection)
{
    auto daggers = toy_daggers();
    auto necklaces = make_necklaces(daggers);
    auto hosts = nondegenerate_hosts(daggers, 4);
    hosts.push_back(transitive_tournament(5));

    auto positive = poly("x1 + x2", 2);
    auto report = check_sign_direction(positive, build_f_of_p(positive, necklaces, ClearingMode::Minimal), daggers, hosts);
    EXPECT_TRUE(report.nonnegative_on_samples);
    EXPECT_FALSE(report.contradiction);
    EXPECT_EQ(report.nonzero_degenerate, 0u);
    EXPECT_TRUE(report.hosts.back().degenerate);

    auto negative = poly("x1 - 1", 2);
    auto other = check_sign_direction(negative, build_f_of_p(negative, necklaces, ClearingMode::Minimal), daggers, hosts);
    EXPECT_FALSE(other.nonnegative_on_samples);
    EXPECT_FALSE(other.contradiction);
}
