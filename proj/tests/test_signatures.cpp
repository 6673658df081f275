#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "splice/splice.hpp"

using namespace splice;

namespace {

// (alpha, m_j, s_j) per direction, keyed by neighbor id.
std::map<std::string, std::tuple<Integer, Integer, Integer>> by_end(const ComponentData& cd) {
    std::map<std::string, std::tuple<Integer, Integer, Integer>> out;
    for (std::size_t j = 0; j < cd.ends.size(); ++j) out[cd.ends[j]] = {cd.alphas[j], cd.mults[j], cd.s[j]};
    return out;
}

std::multiset<std::tuple<Integer, Integer, Integer>> as_multiset(const ComponentData& cd) {
    std::multiset<std::tuple<Integer, Integer, Integer>> out;
    for (std::size_t j = 0; j < cd.ends.size(); ++j) out.insert({cd.alphas[j], cd.mults[j], cd.s[j]});
    return out;
}

}  // namespace

TEST(ComponentData, TwoNodeLinkComponents) {
    const auto cs = components(load_fixture("two_node_link.json"));
    const ComponentData left = component_data(cs[0]);
    EXPECT_EQ(left.m, 38);
    EXPECT_EQ(as_multiset(left), (std::multiset<std::tuple<Integer, Integer, Integer>>{
                                     {2, 0, -19}, {13, 6, -20}, {1, 1, 1}}));
    const ComponentData right = component_data(cs[1]);
    EXPECT_EQ(right.m, 18);
    EXPECT_EQ(as_multiset(right), (std::multiset<std::tuple<Integer, Integer, Integer>>{
                                      {1, 2, 2}, {3, 0, -12}, {2, 0, -9}, {1, 1, 1}}));
}

TEST(ComponentData, Trefoil) {
    const ComponentData cd = component_data(torus(2, 3));
    const auto e = by_end(cd);
    EXPECT_EQ(cd.m, 6);
    EXPECT_EQ(e.at("leaf_p"), std::make_tuple(Integer(2), Integer(0), Integer(-3)));
    EXPECT_EQ(e.at("leaf_q"), std::make_tuple(Integer(3), Integer(0), Integer(-4)));
    EXPECT_EQ(e.at("knot"), std::make_tuple(Integer(1), Integer(1), Integer(1)));
    EXPECT_THROW(component_data(load_fixture("two_node_link.json")), DomainError);
}

TEST(ComponentData, InvariantsOnGeneratedComponents) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        for (const SpliceDiagram& c : components(generate_random(seed, 5))) {
            const ComponentData cd = component_data(c);
            Integer product = 1;
            for (const Integer& a : cd.alphas) product *= a;
            Integer m = 0;
            for (std::size_t j = 0; j < cd.alphas.size(); ++j) {
                const Integer others = product / cd.alphas[j];
                if (cd.alphas[j] == 1)
                    ASSERT_EQ(cd.betas[j], 0);
                else
                    ASSERT_EQ(mod(cd.betas[j] * others, cd.alphas[j]), 1);
                ASSERT_EQ(cd.s[j] * cd.alphas[j], cd.mults[j] - cd.betas[j] * cd.m);
                m += others * cd.mults[j];
            }
            ASSERT_EQ(m, cd.m);
            ASSERT_EQ(cd.m, oracle::multiplicity(c, c.ids_of(VertexKind::node).front()));
        }
    }
}

TEST(EquivariantSignature, Trefoil) {
    const SpliceDiagram t = torus(2, 3);
    EXPECT_EQ(equivariant_signature(t, 1, 6), -1);
    EXPECT_EQ(equivariant_signature(t, 5, 6), 1);
    EXPECT_EQ(equivariant_signature(t, 1, 3), 0);
    EXPECT_EQ(equivariant_signature(t, 1, 2), 0);
    EXPECT_EQ(equivariant_signature(t, 3, 7), 0);
    EXPECT_THROW(equivariant_signature(t, 2, 6), DomainError);
    EXPECT_THROW(equivariant_signature(t, 0, 6), DomainError);
    EXPECT_EQ(equivariant_signature(elementary(3, 0), 1, 2), 0);  // 2 does not divide m = 3
}

TEST(EquivariantSignature, Antisymmetric) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const SpliceDiagram d = generate_random(seed, 3);
        std::set<Integer> moduli;
        for (const auto& c : components(d)) moduli.insert(component_data(c).m);
        for (const Integer& m : moduli) {
            if (m > 200) continue;
            for (Integer p = 1; p < m; ++p) {
                if (gcd(p, m) != 1) continue;
                ASSERT_EQ(equivariant_signature(d, p, m), -equivariant_signature(d, m - p, m));
            }
        }
    }
}

TEST(StepFunction, Trefoil) {
    const StepFunction f = signature_function(torus(2, 3));
    EXPECT_EQ(f.breakpoints, (std::vector<Rational>{Rational(1, 6), Rational(5, 6)}));
    EXPECT_EQ(f.values, (std::vector<Integer>{0, -2, 0}));
    EXPECT_EQ(f.integral(), Rational(-4, 3));
    EXPECT_EQ(f.value_at(Rational(1, 6)), Rational(-1));
    EXPECT_EQ(f.value_at(Rational(1, 2)), Rational(-2));
    EXPECT_THROW(f.value_at(Rational(0)), DomainError);
}

TEST(StepFunction, TorusKnotsMatchLatticeCount) {
    for (std::int64_t p = 2; p <= 9; ++p)
        for (std::int64_t q = p + 1; q <= 11; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const StepFunction f = signature_function(torus(p, q));
            // Every open interval, sampled at its midpoint, and every breakpoint.
            Rational left(0);
            for (std::size_t k = 0; k < f.values.size(); ++k) {
                const Rational right = k < f.breakpoints.size() ? f.breakpoints[k] : Rational(1);
                const Rational mid = (left + right) / Rational(2);
                ASSERT_EQ(Rational(f.values[k]), Rational(oracle::torus_signature(p, q, mid))) << p << "," << q;
                if (k < f.breakpoints.size()) {
                    ASSERT_EQ(f.value_at(right), Rational(oracle::torus_signature(p, q, right)));
                }
                left = right;
            }
            ASSERT_EQ(f.integral(), oracle::torus_average(p, q));
        }
}

TEST(StepFunction, ShapeInvariants) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const SpliceDiagram d = generate_random(seed, 5);
        const StepFunction f = signature_function(d);
        ASSERT_EQ(f.values.size(), f.breakpoints.size() + 1);
        const Integer ends = 1 - static_cast<long long>(d.ids_of(VertexKind::arrowhead).size());
        ASSERT_EQ(f.values.front(), ends);
        ASSERT_EQ(f.values.back(), ends);
        for (std::size_t k = 0; k < f.breakpoints.size(); ++k) {
            ASSERT_GT(f.breakpoints[k], Rational(0));
            ASSERT_LT(f.breakpoints[k], Rational(1));
            if (k) {
                ASSERT_LT(f.breakpoints[k - 1], f.breakpoints[k]);
            }
            ASSERT_NE(f.values[k], f.values[k + 1]);
            // Symmetric about 1/2.
            ASSERT_EQ(f.breakpoints[k], Rational(1) - f.breakpoints[f.breakpoints.size() - 1 - k]);
            ASSERT_EQ(f.values[k], f.values[f.values.size() - 1 - k]);
        }
    }
}

TEST(StepFunction, StarIsSymmetric) {
    const StepFunction f = signature_function(build_family(StarParams{2, 3, {1, 1}}));
    std::mt19937_64 rng(1);
    for (int k = 0; k < 200; ++k) {
        const Rational x(Integer(rng() % 9999 + 1), Integer(10000));
        EXPECT_EQ(f.value_at(x), f.value_at(Rational(1) - x));
    }
}

TEST(StepFunction, RequiresNonzeroArrowhead) {
    const SpliceDiagram silent({{"n", VertexKind::node},
                                {"l", VertexKind::leaf},
                                {"a", VertexKind::arrowhead, 0},
                                {"b", VertexKind::arrowhead, 0}},
                               {{"n", "l", 2, 1}, {"n", "a"}, {"n", "b"}});
    EXPECT_THROW(signature_function(silent), DomainError);
    EXPECT_THROW(average_signature(silent), DomainError);
}

TEST(AverageSignature, Examples) {
    EXPECT_EQ(average_signature(load_fixture("two_node_link.json")), Rational(-1015, 57));
    EXPECT_EQ(average_signature(torus(2, 3)), Rational(-4, 3));
    for (int a = 1; a <= 9; ++a) EXPECT_EQ(average_signature(elementary(a, 0)), Rational(0)) << a;
}

TEST(AverageSignature, TorusKnotClosedForm) {
    for (int p = 2; p <= 15; ++p)
        for (int q = p + 1; q <= 15; ++q)
            if (std::gcd(p, q) == 1) {
                ASSERT_EQ(average_signature(torus(p, q)), oracle::torus_average(p, q));
            }
}

TEST(AverageSignature, RoutesAgree) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const SpliceDiagram d = generate_random(seed, 5);
        const AverageSignature a = average_signature_both(d);
        ASSERT_EQ(a.by_integral, a.by_dedekind);
        ASSERT_EQ(average_by_integral(d), average_by_dedekind(d));
    }
}

TEST(AverageSignature, SpliceAdditive) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const SpliceDiagram d = generate_random(seed, 5);
        for (const auto& [a, b] : oracle::node_edges(d)) {
            const CutResult c = cut_edge(d, a, b);
            ASSERT_EQ(average_signature(d),
                      average_signature(c.side_a) + average_signature(c.side_b) + Rational(c.eta));
            ++checked;
        }
    }
    EXPECT_GT(checked, 200);
}

TEST(AverageElementary, Examples) {
    EXPECT_EQ(average_elementary(1, 1), Rational(-1));
    EXPECT_EQ(average_elementary(2, 1), Rational(-2));
    EXPECT_EQ(average_elementary(6, 2), average_signature(elementary(6, 2)));
    EXPECT_THROW(average_elementary(3, 0), DomainError);
    EXPECT_THROW(average_elementary(0, 3), DomainError);
}

TEST(AverageElementary, MatchesPipeline) {
    for (int a = 1; a <= 30; ++a)
        for (int b = 1; b <= 30; ++b) ASSERT_EQ(average_elementary(a, b), average_signature(elementary(a, b))) << a << "," << b;
}

TEST(StarFamily, ClosedFormMatchesPipeline) {
    const std::vector<std::tuple<int, int, std::vector<Integer>>> cases{
        {2, 3, {1}}, {2, 3, {1, 1}}, {3, 5, {2, 1}}, {2, 5, {3, 4, 1}}, {4, 3, {2}}};
    for (const auto& [p, q, ms] : cases)
        EXPECT_EQ(family2_average_oracle(p, q, ms), average_signature(build_family(StarParams{p, q, ms})));
    std::mt19937_64 rng(31);
    for (int k = 0; k < 100; ++k) {
        const auto pq = oracle::random_pairs(rng, 1, 7).front();
        std::vector<Integer> ms(1 + rng() % 3);
        for (auto& m : ms) m = 1 + rng() % 5;
        ASSERT_EQ(family2_average_oracle(pq.first, pq.second, ms),
                  average_signature(build_family(StarParams{pq.first, pq.second, ms})));
    }
    EXPECT_THROW(family2_average_oracle(2, 4, {1}), DomainError);
    EXPECT_THROW(family2_average_oracle(2, 3, {}), DomainError);
}
