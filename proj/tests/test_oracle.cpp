#include <gtest/gtest.h>

#include <kpoincare/oracle.hpp>

#include "corpus.hpp"

using namespace kpoincare;

namespace
{

poly_xy mono(int i, int j, rational c = 1)
{
    return {{{i, j, c}}};
}

std::vector<long long> dims(const branch_param &b, std::size_t V)
{
    return filtration_dims(b, V).dims;
}

} // namespace

TEST(ValueOf, Cusp)
{
    const auto p = corpus::rational_branches()[1].branch.to_plane();
    const auto y = value_of(mono(0, 1), p);
    EXPECT_EQ(y.value, std::optional<std::size_t>(3));
    EXPECT_EQ(y.leading, alg_num::one(p.zero.field()));
    EXPECT_EQ(value_of(mono(0, 2) + mono(3, 0, -1), p).value, std::nullopt);
    EXPECT_EQ(value_of(mono(0, 2) + mono(3, 0, -1) + mono(2, 1), p).value, std::optional<std::size_t>(7));
    EXPECT_EQ(value_of(mono(0, 0, 5), p).value, std::optional<std::size_t>(0));
}

TEST(ValueOf, ImplicitEquationOverField)
{
    const auto p = corpus::field_branches()[0].branch.to_plane();
    EXPECT_EQ(value_of(mono(0, 2) + mono(2, 0, -2), p).value, std::nullopt);
    EXPECT_EQ(value_of(mono(0, 1) + mono(1, 0, -1), p).value, std::optional<std::size_t>(1));
}

TEST(ValueOf, ValuationAxioms)
{
    const auto p = corpus::rational_branches()[2].branch.to_plane();
    const std::vector<poly_xy> fs{mono(1, 0), mono(0, 1), mono(0, 2) + mono(3, 0, -1), mono(1, 1) + mono(0, 2)};
    for (const auto &f : fs) {
        for (const auto &g : fs) {
            const auto vf = value_of(f, p).value;
            const auto vg = value_of(g, p).value;
            const auto vfg = value_of(f * g, p).value;
            ASSERT_TRUE(vf && vg && vfg);
            EXPECT_EQ(*vfg, *vf + *vg);
            const auto vs = value_of(f + g, p).value;
            if (vs) {
                EXPECT_GE(*vs, std::min(*vf, *vg));
            }
        }
    }
}

// Expected dimensions come from a separate rank computation on the ideal.
TEST(FiltrationDims, Frozen)
{
    const auto Q = corpus::rational_branches();
    const auto K = corpus::field_branches();
    EXPECT_EQ(dims(Q[1].branch, 10), (std::vector<long long>{1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(dims(Q[2].branch, 16), (std::vector<long long>{1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 1}));
    EXPECT_EQ(dims(K[0].branch, 6), (std::vector<long long>{1, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(dims(K[1].branch, 8), (std::vector<long long>{1, 0, 1, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(dims(K[2].branch, 14), (std::vector<long long>{1, 0, 1, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(dims(K[3].branch, 8), (std::vector<long long>{1, 1, 2, 2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(dims(K[11].branch, 6), (std::vector<long long>{1, 2, 3, 3, 3, 3, 3}));
    EXPECT_EQ(dims(K[15].branch, 8), (std::vector<long long>{1, 2, 2, 3, 4, 4, 4, 4, 4}));
}

TEST(FiltrationDims, ObservedSemigroup)
{
    const auto Q = corpus::rational_branches();
    EXPECT_EQ(observed_semigroup(Q[3].branch, 10), (std::set<long long>{0, 3, 4, 6, 7, 8, 9, 10}));
    const auto rep = filtration_dims(Q[0].branch, 5);
    EXPECT_EQ(rep.V, 5u);
    EXPECT_EQ(rep.mode, filtration_mode::curve);
    EXPECT_EQ(rep.dims, (std::vector<long long>{1, 1, 1, 1, 1, 1}));
}

TEST(Divisorial, ValuesOfMonomials)
{
    const auto cusp = corpus::rational_branches()[1].branch;
    const resolution r = resolve(cusp);
    const auto e1 = generic_curvette(r.records, 1);
    EXPECT_EQ(divisorial_value(mono(1, 0), e1), std::optional<std::size_t>(1));
    EXPECT_EQ(divisorial_value(mono(0, 1), e1), std::optional<std::size_t>(1));
    const auto e3 = generic_curvette(r.records, 3);
    EXPECT_EQ(divisorial_value(mono(1, 0), e3), std::optional<std::size_t>(2));
    EXPECT_EQ(divisorial_value(mono(0, 1), e3), std::optional<std::size_t>(3));
    EXPECT_EQ(divisorial_value(mono(0, 2) + mono(3, 0, -1), e3), std::optional<std::size_t>(6));
}

TEST(Divisorial, FrozenDimensions)
{
    const auto targets = corpus::divisorial_targets();
    auto at = [&](std::size_t i, std::size_t V) {
        const auto &t = targets[i];
        const resolution r = resolve(t.base.branch, t.extra_steps);
        const auto rep = divisorial_filtration_dims(generic_curvette(r.records, static_cast<int>(r.components())), V);
        EXPECT_EQ(rep.mode, filtration_mode::divisorial);
        return rep.dims;
    };
    EXPECT_EQ(at(0, 5), (std::vector<long long>{1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(at(1, 6), (std::vector<long long>{1, 1, 2, 2, 3, 3, 4}));
    EXPECT_EQ(at(2, 12), (std::vector<long long>{1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3}));
    EXPECT_EQ(at(3, 8), (std::vector<long long>{1, 2, 2, 3, 4, 4, 5, 6, 6}));
}
