#include <gtest/gtest.h>

#include <kpoincare/poincare.hpp>
#include <kpoincare/report.hpp>

#include "corpus.hpp"

using namespace kpoincare;

namespace
{

using factor_list = std::vector<std::pair<long long, long long>>;

numerical_data data_of(const branch_param &b)
{
    return curve_values(resolve(b)).nd;
}

std::vector<long long> classical(const branch_param &b, std::size_t n)
{
    return expand(classical_series(data_of(b)), n).coeffs;
}

numerical_data cusp_data()
{
    return data_of(corpus::rational_branches()[1].branch);
}

} // namespace

TEST(CharInvariants, GcdChain)
{
    const auto [e, n] = char_invariants({4, 6, 13});
    EXPECT_EQ(e, (std::vector<long long>{4, 2, 1}));
    EXPECT_EQ(n, (std::vector<long long>{2, 2}));
    EXPECT_THROW(char_invariants({4, 6}), bad_semigroup_data);
    EXPECT_THROW(char_invariants({}), bad_semigroup_data);
}

TEST(NumericalData, Cusp)
{
    const numerical_data nd = cusp_data();
    EXPECT_EQ(nd.m_sigma, (std::vector<long long>{2, 3}));
    EXPECT_EQ(nd.M_sigma, (std::vector<long long>{2, 3}));
    EXPECT_EQ(nd.M_tau, (std::vector<long long>{6}));
    EXPECT_EQ(nd.c_conductor, 2);
    EXPECT_EQ(nd.Delta, 2);
    EXPECT_EQ(nd.ell_total, 1);
    EXPECT_EQ(semigroup_series(nd).factors, (factor_list{{6, 1}, {2, -1}, {3, -1}}));
}

TEST(NumericalData, SplittingRaisesM)
{
    const numerical_data nd = data_of(corpus::field_branches()[0].branch);
    EXPECT_EQ(nd.M_sigma, (std::vector<long long>{1}));
    ASSERT_EQ(nd.splitting.size(), 1u);
    EXPECT_EQ(nd.splitting[0].M_rho, 1);
    EXPECT_EQ(nd.splitting[0].ell, 2);
    EXPECT_EQ(nd.c_conductor, 0);
    EXPECT_EQ(nd.Delta, 1);
    EXPECT_EQ(classical_series(nd).factors, (factor_list{{1, -2}, {2, 1}}));
}

TEST(NumericalData, TauValuesAndGcd)
{
    for (const auto &e : corpus::all_case_one()) {
        const numerical_data nd = data_of(e.branch);
        for (std::size_t i = 0; i < nd.g(); ++i) {
            EXPECT_EQ(nd.M_tau[i], nd.N[i] * nd.M_sigma[i + 1]) << e.name;
        }
        EXPECT_TRUE(minimal_generator_check(nd.M_sigma, nd.N).ok) << e.name;
    }
}

// Expected coefficients are dimensions of the value filtration computed
// from the implicit ideal by a separate rank computation.
TEST(ClassicalSeries, FrozenDimensions)
{
    const auto Q = corpus::rational_branches();
    const auto K = corpus::field_branches();
    EXPECT_EQ(classical(Q[1].branch, 10), (std::vector<long long>{1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(classical(Q[2].branch, 16),
              (std::vector<long long>{1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 1}));
    EXPECT_EQ(classical(K[0].branch, 6), (std::vector<long long>{1, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(classical(K[2].branch, 14), (std::vector<long long>{1, 0, 1, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(classical(K[3].branch, 8), (std::vector<long long>{1, 1, 2, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(classical(K[11].branch, 6), (std::vector<long long>{1, 2, 3, 3, 3, 3, 3}));
    EXPECT_EQ(classical(K[15].branch, 8), (std::vector<long long>{1, 2, 2, 3, 4, 4, 4, 4, 4}));
}

TEST(DivisorialSeries, CuspFactorCancels)
{
    numerical_data nd = cusp_data();
    EXPECT_THROW(divisorial_series(nd), missing_delta);
    nd.M_delta = 6;
    const series_product sp = divisorial_series(nd);
    EXPECT_EQ(sp.factors, (factor_list{{2, -1}, {3, -1}}));
    EXPECT_EQ(expand(sp, 12).coeffs, (std::vector<long long>{1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3}));
}

TEST(PartialSeries, EachStepMultipliesByOneSplittingFactor)
{
    const numerical_data nd = with_abstract_splittings(cusp_data(), {{5, 2, 0}, {7, 3, 0}});
    EXPECT_TRUE(nd.partial);
    EXPECT_EQ(nd.ell_total, 6);
    EXPECT_EQ(nd.Delta, 2 + 5 + 14);
    EXPECT_THROW(partial_series(nd, 0), index_out_of_range);
    EXPECT_THROW(partial_series(nd, 4), index_out_of_range);
    const std::size_t n = 40;
    for (std::size_t j = 1; j <= 2; ++j) {
        const auto &s = nd.splitting[j - 1];
        series_product step = partial_series(nd, j);
        step.factors.emplace_back(s.ell * s.M_rho, 1);
        step.factors.emplace_back(s.M_rho, -1);
        EXPECT_EQ(expand(step, n).coeffs, expand(partial_series(nd, j + 1), n).coeffs);
        EXPECT_TRUE(partial_series(nd, j).partial);
    }
    EXPECT_THROW(with_abstract_splittings(cusp_data(), {{5, 1, 0}}), bad_semigroup_data);
}

TEST(Expand, Basics)
{
    EXPECT_EQ(expand({{{1, -1}}}, 4).coeffs, (std::vector<long long>{1, 1, 1, 1, 1}));
    EXPECT_EQ(expand({{{1, -2}}}, 4).coeffs, (std::vector<long long>{1, 2, 3, 4, 5}));
    EXPECT_EQ(expand({{{2, 1}}}, 4).coeffs, (std::vector<long long>{1, 0, -1, 0, 0}));
    EXPECT_EQ(expand({}, 2).coeffs, (std::vector<long long>{1, 0, 0}));
    EXPECT_THROW(expand({{{0, 1}}}, 2), math_error);
}

TEST(Symmetry, HoldsAtDelta)
{
    const numerical_data cusp = cusp_data();
    EXPECT_TRUE(symmetry_check(expand(classical_series(cusp), 10), cusp.Delta, 1));
    EXPECT_FALSE(symmetry_check(expand(classical_series(cusp), 10), cusp.Delta + 1, 1));
    EXPECT_THROW(symmetry_check(expand(classical_series(cusp), 1), cusp.Delta, 1), truncation_too_short);
    const numerical_data line = data_of(corpus::field_branches()[0].branch);
    EXPECT_TRUE(symmetry_check(expand(classical_series(line), 6), line.Delta, 2));
}

TEST(Semigroup, MembershipAndGaps)
{
    EXPECT_EQ(gaps({2, 3}, 10), (std::vector<long long>{1}));
    EXPECT_FALSE(membership({2, 3}, 1));
    EXPECT_TRUE(membership({2, 3}, 5));
    EXPECT_FALSE(membership({2, 3}, -1));
    EXPECT_EQ(gaps({4, 6, 13}, 30), (std::vector<long long>{1, 2, 3, 5, 7, 9, 11, 15}));
}

TEST(Semigroup, MinimalGeneratorCheck)
{
    EXPECT_TRUE(minimal_generator_check({4, 6, 13}, {2, 2}).ok);
    const check_result bad = minimal_generator_check({4, 6, 12}, {2, 2});
    EXPECT_FALSE(bad.ok);
    EXPECT_FALSE(bad.witness.empty());
    EXPECT_FALSE(minimal_generator_check({4, 6}, {2, 2}).ok);
}

TEST(BinomialFactorization, RecoversProduct)
{
    const series_product sp = classical_series(cusp_data());
    const factorization full = binomial_factorization(expand(sp, 10), &sp);
    EXPECT_EQ(full.factors, (factor_list{{2, -1}, {3, -1}, {6, 1}}));
    EXPECT_EQ(full.verdict, cyclotomic_verdict::cyclotomic);
    const factorization short_window = binomial_factorization(expand(sp, 5), &sp);
    EXPECT_EQ(short_window.verdict, cyclotomic_verdict::truncation_inconclusive);
    EXPECT_EQ(binomial_factorization(expand(sp, 10)).verdict, cyclotomic_verdict::truncation_inconclusive);
    EXPECT_EQ(binomial_factorization({{1, 2, 3, 4}}).factors, (factor_list{{1, -2}}));
    EXPECT_THROW(binomial_factorization({{2, 1}}), math_error);
}
