#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "sishd/analysis.hpp"
#include "sishd/model.hpp"
#include "support/oracles.hpp"

using namespace sishd;
using sishd::testing::table_A;
using sishd::testing::table_B;

TEST(ModelParams, RejectsNonPositiveRates)
{
    Rates r = published::table_A[0].rates;
    r.mu = 0.0;
    EXPECT_THROW(ModelParams{r}, ValidationError);
    r = published::table_A[0].rates;
    r.delta = -0.1;
    EXPECT_THROW(ModelParams{r}, ValidationError);
    r = published::table_A[0].rates;
    r.beta = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(ModelParams{r}, ValidationError);
}

TEST(ModelParams, EpsilonRange)
{
    Rates r = published::table_A[0].rates;
    r.epsilon = 0.0;
    EXPECT_NO_THROW(ModelParams{r});
    r.epsilon = 1.0;
    EXPECT_NO_THROW(ModelParams{r});
    r.epsilon = 1.5;
    try {
        ModelParams{r};
        FAIL() << "expected ValidationError";
    }
    catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("epsilon"), std::string::npos);
    }
}

TEST(VectorField, DiseaseFreeEquilibriumIsFixed)
{
    const auto d = vector_field(table_A(1), {1000, 0, 0, 0});
    EXPECT_EQ(d.dS, 0.0);
    EXPECT_EQ(d.dI, 0.0);
    EXPECT_EQ(d.dH, 0.0);
    EXPECT_EQ(d.dD, 0.0);
}

TEST(VectorField, TableEndemicPointIsNearlyFixed)
{
    // Published equilibrium values are rounded to two decimals.
    const auto d = vector_field(table_B(1), {666.67, 75.60, 27.49, 12.0});
    EXPECT_NEAR(d.dS, 0.0, 0.5);
    EXPECT_NEAR(d.dI, 0.0, 0.5);
    EXPECT_NEAR(d.dH, 0.0, 0.5);
}

TEST(VectorField, HandEvaluatedTerms)
{
    // A1 at (800, 100, 100):
    //   beta I S = 9.6, beta eps H S = 1.92
    //   S' = 20 - 9.6 - 1.92 + 5 - 16 + 1 = -1.52
    //   I' = 11.52 - 0.19 * 100          = -7.48
    //   H' = 2 - 0.08 * 100              = -6
    //   D' = 10 + 5                      = 15
    const auto d = vector_field(table_A(1), {800, 100, 100, 0});
    EXPECT_NEAR(d.dS, -1.52, 1e-12);
    EXPECT_NEAR(d.dI, -7.48, 1e-12);
    EXPECT_NEAR(d.dH, -6.0, 1e-12);
    EXPECT_NEAR(d.dD, 15.0, 1e-12);
}

TEST(VectorField, RejectsBadStates)
{
    EXPECT_THROW(vector_field(table_A(1), {std::nan(""), 0, 0, 0}), ValidationError);
    EXPECT_THROW(vector_field(table_A(1), {1, INFINITY, 0, 0}), ValidationError);
    EXPECT_THROW(vector_field(table_A(1), {1, -1, 0, 0}), ValidationError);
}

TEST(TotalLiving, ExcludesDeaths)
{
    EXPECT_EQ(total_living({800, 100, 100, 50}), 1000.0);
    EXPECT_EQ(total_living({0, 0, 0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(total_living(disease_free_equilibrium(table_A(1))), 1000.0);
}

TEST(FeasibleRegion, Membership)
{
    const auto p = table_A(1);
    EXPECT_TRUE(in_feasible_region(p, {1000, 0, 0, 0}, 0.0));
    EXPECT_FALSE(in_feasible_region(p, {1000, 1, 0, 0}, 0.0));
    EXPECT_TRUE(in_feasible_region(p, {500, 250, 250, 0}, 0.0));
    EXPECT_FALSE(in_feasible_region(p, {-1e-6, 0, 0, 0}, 0.0));
    EXPECT_TRUE(in_feasible_region(p, {-1e-6, 0, 0, 0}, 1e-5));
    EXPECT_THROW(in_feasible_region(p, {0, 0, 0, 0}, -1.0), ValidationError);
    EXPECT_DOUBLE_EQ(FeasibleRegion(p).bound(), 1000.0);
}

TEST(ModelProperties, DfeResidualIsZero)
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const auto p = sishd::testing::random_params(rng);
        const auto d = vector_field(p, disease_free_equilibrium(p));
        EXPECT_NEAR(d.dS, 0.0, 1e-12 * p.Lambda());
        EXPECT_EQ(d.dI, 0.0);
        EXPECT_EQ(d.dH, 0.0);
    }
}

TEST(ModelProperties, LivingPopulationIdentity)
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 2000.0);
    for (int k = 0; k < 500; ++k) {
        const auto p = sishd::testing::random_params(rng);
        const State x{u(rng), u(rng), u(rng), u(rng)};
        const auto d = vector_field(p, x);
        const double lhs = d.dS + d.dI + d.dH;
        const double n = total_living(x);
        const double rhs = p.Lambda() - p.mu() * n - p.gamma_I() * x.I - p.gamma_H() * x.H;
        const double scale = p.Lambda() + p.beta() * n * n + (p.exit_I() + p.exit_H() + p.mu()) * n;
        EXPECT_NEAR(lhs, rhs, 1e-12 * scale);
        EXPECT_LE(lhs, p.Lambda() - p.mu() * n + 1e-12 * scale);
    }
}

TEST(ModelProperties, BoundaryRepulsion)
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 2000.0);
    for (int k = 0; k < 500; ++k) {
        const auto p = sishd::testing::random_params(rng);
        const State x{u(rng), u(rng), u(rng), u(rng)};
        EXPECT_GE(vector_field(p, {0, x.I, x.H, x.D}).dS, 0.0);
        EXPECT_GE(vector_field(p, {x.S, 0, x.H, x.D}).dI, 0.0);
        EXPECT_GE(vector_field(p, {x.S, x.I, 0, x.D}).dH, 0.0);
        EXPECT_GE(vector_field(p, {x.S, x.I, x.H, 0}).dD, 0.0);
    }
}
