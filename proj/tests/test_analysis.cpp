#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sishd/analysis.hpp"
#include "support/oracles.hpp"

using namespace sishd;
using sishd::testing::rel_diff;
using sishd::testing::table_A;
using sishd::testing::table_B;

// --- reproduction number ---------------------------------------------------

TEST(R0, PublishedValues)
{
    EXPECT_NEAR(compute_r0(table_A(1)), 0.6632, 5e-4);
    EXPECT_NEAR(compute_r0(table_B(5)) / 5.0, 1.0, 0.01);
    EXPECT_NEAR(r0_ngm_oracle(table_B(3)) / 2.5, 1.0, 0.01);
}

TEST(R0, VanishingHospitalizationGivesSisValue)
{
    // delta must stay positive; at delta = 1e-300 every delta term is below rounding.
    for (double eps : {0.0, 0.4, 1.0}) {
        Rates r = published::table_B[1].rates;
        r.delta = 1e-300;
        r.epsilon = eps;
        const ModelParams p(r);
        const double sis = r.beta * r.Lambda / (r.mu * (r.alpha_I + r.gamma_I + r.mu));
        EXPECT_NEAR(compute_r0(p), sis, 1e-14 * sis);
    }
}

TEST(R0, OracleAgreesOnTableSets)
{
    for (int k = 1; k <= 5; ++k) {
        EXPECT_LE(rel_diff(r0_ngm_oracle(table_A(k)), compute_r0(table_A(k))), 1e-12);
        EXPECT_LE(rel_diff(r0_ngm_oracle(table_B(k)), compute_r0(table_B(k))), 1e-12);
    }
}

TEST(R0, OracleTriangularCase)
{
    const ModelParams p = table_B(2).with(Param::epsilon, 0.0);
    const double expected = p.beta() * p.Lambda() / (p.mu() * p.exit_I());
    EXPECT_LE(rel_diff(r0_ngm_oracle(p), expected), 1e-13);
}

TEST(R0, OracleEquivalenceRandomSweep)
{
    std::mt19937_64 rng(101);
    for (int k = 0; k < 2000; ++k) {
        const auto p = sishd::testing::random_params(rng);
        ASSERT_LE(rel_diff(r0_ngm_oracle(p), compute_r0(p)), 1e-12) << "sample " << k;
    }
}

// --- equilibria -------------------------------------------------------------

TEST(Equilibria, DiseaseFree)
{
    EXPECT_EQ(disease_free_equilibrium(table_A(1)), (State{1000, 0, 0, 0}));
    EXPECT_EQ(disease_free_equilibrium(table_B(4)), (State{1000, 0, 0, 0}));
    Rates r = published::table_A[0].rates;
    r.Lambda = r.mu;
    EXPECT_EQ(disease_free_equilibrium(ModelParams(r)), (State{1, 0, 0, 0}));
}

TEST(Equilibria, EndemicPublished)
{
    const auto e1 = disease_endemic_equilibrium(table_B(1));
    ASSERT_TRUE(e1);
    EXPECT_LE(rel_diff(e1->S, 666.67), 0.005);
    EXPECT_LE(rel_diff(e1->I, 75.60), 0.005);
    EXPECT_LE(rel_diff(e1->H, 27.49), 0.005);

    const auto e5 = disease_endemic_equilibrium(table_B(5));
    ASSERT_TRUE(e5);
    EXPECT_LE(rel_diff(e5->S, 200.00), 0.005);
    EXPECT_LE(rel_diff(e5->I, 198.02), 0.005);
    EXPECT_LE(rel_diff(e5->H, 79.21), 0.005);

    EXPECT_FALSE(disease_endemic_equilibrium(table_A(2)));
}

TEST(Equilibria, RoundedTableR0ReproducesTableS)
{
    // S* = Lambda / (mu R0); with the published R0 = 1.5 this is 666.67.
    const auto p = table_B(1);
    EXPECT_NEAR(p.Lambda() / (p.mu() * 1.5), 666.67, 5e-3);
}

TEST(Equilibria, EndemicIsFixedPoint)
{
    for (int k = 1; k <= 5; ++k) {
        const auto p = table_B(k);
        const auto e = disease_endemic_equilibrium(p);
        ASSERT_TRUE(e);
        const auto d = vector_field(p, e->as_state());
        EXPECT_NEAR(d.dS, 0.0, 1e-10);
        EXPECT_NEAR(d.dI, 0.0, 1e-10);
        EXPECT_NEAR(d.dH, 0.0, 1e-10);
    }
}

TEST(EquilibriaProperties, ThresholdAndIdentities)
{
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> target(0.2, 6.0);
    for (int k = 0; k < 2000; ++k) {
        const auto p = sishd::testing::with_r0(sishd::testing::random_params(rng), target(rng));
        const double r0 = compute_r0(p);
        const auto e = disease_endemic_equilibrium(p);
        // I* denominator is positive for every valid parameter set.
        const double denom = (p.gamma_I() + p.mu() + p.delta()) * p.exit_H() - p.alpha_H() * p.delta();
        EXPECT_GT(denom, 0.0);
        if (r0 > 1.0 + 1e-9) {
            ASSERT_TRUE(e) << "R0 = " << r0;
            EXPECT_GT(e->S, 0.0);
            EXPECT_GT(e->I, 0.0);
            EXPECT_GT(e->H, 0.0);
            EXPECT_LE(rel_diff(e->S, p.Lambda() / (p.mu() * r0)), 1e-12);
        }
        else if (r0 <= 1.0) {
            EXPECT_FALSE(e) << "R0 = " << r0;
        }
    }
}

TEST(EquilibriaProperties, BetaSweepThroughThreshold)
{
    std::mt19937_64 rng(203);
    for (int k = 0; k < 200; ++k) {
        const auto base = sishd::testing::random_params(rng);
        for (double target : {0.5, 0.9, 0.999, 1.001, 1.1, 2.0}) {
            const auto p = sishd::testing::with_r0(base, target);
            EXPECT_EQ(disease_endemic_equilibrium(p).has_value(), compute_r0(p) > 1.0) << target;
        }
    }
}

// --- linearization ------------------------------------------------------------

TEST(Jacobian, AtDiseaseFreeEquilibrium)
{
    for (int k = 1; k <= 5; ++k) {
        const auto p = table_B(k);
        const auto J = jacobian(p, disease_free_equilibrium(p));
        EXPECT_EQ(J(0, 0), -p.mu());
        EXPECT_EQ(J(2, 0), 0.0);
        EXPECT_EQ(J(2, 1), p.delta());
        EXPECT_EQ(J(2, 2), -p.exit_H());
    }
}

TEST(Jacobian, MatchesCentralDifferences)
{
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(1.0, 900.0);
    for (int k = 0; k < 200; ++k) {
        const auto p = sishd::testing::random_params(rng);
        const State x{u(rng), u(rng), u(rng), 0.0};
        const auto J = jacobian(p, x);
        const double h = 1e-6;
        for (int col = 0; col < 3; ++col) {
            State up = x, dn = x;
            double* pu = col == 0 ? &up.S : col == 1 ? &up.I : &up.H;
            double* pd = col == 0 ? &dn.S : col == 1 ? &dn.I : &dn.H;
            *pu += h;
            *pd -= h;
            const auto fu = vector_field(p, up);
            const auto fd = vector_field(p, dn);
            const double fdcol[3] = {(fu.dS - fd.dS) / (2 * h), (fu.dI - fd.dI) / (2 * h), (fu.dH - fd.dH) / (2 * h)};
            const double scale = J.col(col).cwiseAbs().maxCoeff();
            for (int row = 0; row < 3; ++row) {
                EXPECT_NEAR(fdcol[row], J(row, col), 1e-5 * std::max(std::abs(J(row, col)), scale))
                    << "entry (" << row << "," << col << ")";
            }
        }
    }
}

TEST(Jacobian, EndemicEigenvaluesStable)
{
    const auto p = table_B(1);
    const auto ev = eigenvalues(jacobian(p, disease_endemic_equilibrium(p)->as_state()));
    for (const auto& l : ev) {
        EXPECT_LT(l.real(), 0.0);
    }
}

// --- Routh-Hurwitz ------------------------------------------------------------

TEST(Routh, B1Conditions)
{
    const auto c = routh_coefficients(table_B(1));
    EXPECT_GT(c.a1, 0);
    EXPECT_GT(c.a3, 0);
    EXPECT_GT(c.a1 * c.a2 - c.a3, 0);
}

TEST(Routh, RequiresEndemicEquilibrium)
{
    EXPECT_THROW(routh_coefficients(table_A(1)), NoEndemicEquilibrium);
    EXPECT_THROW(routh_coefficients_symbolic(table_A(1)), NoEndemicEquilibrium);
}

TEST(Routh, MatrixAndSymbolicPathsAgree)
{
    for (int k = 1; k <= 5; ++k) {
        const auto m = routh_coefficients(table_B(k));
        const auto s = routh_coefficients_symbolic(table_B(k));
        EXPECT_LE(rel_diff(m.a1, s.a1), 1e-9) << k;
        EXPECT_LE(rel_diff(m.a2, s.a2), 1e-9) << k;
        EXPECT_LE(rel_diff(m.a3, s.a3), 1e-9) << k;
    }
}

TEST(Routh, CubicRootsMatchEigenvalues)
{
    for (int k = 1; k <= 5; ++k) {
        const auto p = table_B(k);
        const auto c = routh_coefficients(p);
        const auto roots = sishd::testing::cubic_roots(c.a1, c.a2, c.a3);
        const auto ev = eigenvalues(jacobian(p, disease_endemic_equilibrium(p)->as_state()));
        EXPECT_LE(sishd::testing::match_distance(roots, ev), 1e-8) << k;
    }
}

TEST(RouthProperties, HurwitzAtRandomEndemicEquilibria)
{
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> target(1.01, 20.0);
    for (int k = 0; k < 2000; ++k) {
        const auto p = sishd::testing::with_r0(sishd::testing::random_params(rng), target(rng));
        const auto m = routh_coefficients(p);
        const auto s = routh_coefficients_symbolic(p);
        ASSERT_TRUE(m.hurwitz_stable()) << "sample " << k;
        const double scale = std::abs(m.a1) + std::abs(m.a2) + std::abs(m.a3);
        EXPECT_NEAR(m.a1, s.a1, 1e-9 * std::max(std::abs(m.a1), scale));
        const auto ev = eigenvalues(jacobian(p, disease_endemic_equilibrium(p)->as_state()));
        EXPECT_LT(spectral_abscissa(ev), 0.0);
    }
}

// --- classification -------------------------------------------------------------

TEST(Classify, DiseaseFreeRegime)
{
    const auto rep = classify_stability(table_A(3));
    EXPECT_NEAR(rep.r0, 0.6367, 5e-4);
    EXPECT_EQ(rep.dfe_stability, Stability::LocallyStable);
    EXPECT_FALSE(rep.dee);
    EXPECT_FALSE(rep.dee_stability);
    EXPECT_FALSE(rep.routh);
    EXPECT_EQ(rep.dfe.S, table_A(3).carrying_level());
}

TEST(Classify, EndemicRegime)
{
    const auto rep = classify_stability(table_B(2));
    EXPECT_EQ(rep.dfe_stability, Stability::Unstable);
    ASSERT_TRUE(rep.dee_stability);
    EXPECT_EQ(*rep.dee_stability, Stability::LocallyStable);
    ASSERT_TRUE(rep.dee_eigenvalues);
    EXPECT_LT(spectral_abscissa(*rep.dee_eigenvalues), 0.0);
}

TEST(Classify, ThresholdIsNonhyperbolic)
{
    const auto p = sishd::testing::with_r0(table_B(2), 1.0);
    const auto rep = classify_stability(p);
    EXPECT_NEAR(rep.r0, 1.0, 1e-14);
    EXPECT_EQ(rep.dfe_stability, Stability::Nonhyperbolic);
    EXPECT_EQ(classify_dfe(1.0 + 2e-9), Stability::Unstable);
    EXPECT_EQ(classify_dfe(1.0 - 2e-9), Stability::LocallyStable);
}

TEST(Classify, RouthVerdicts)
{
    EXPECT_EQ(classify_routh({1, 1, 0.5}), Stability::LocallyStable);
    EXPECT_EQ(classify_routh({1, 1, -0.5}), Stability::Unstable);
    EXPECT_EQ(classify_routh({1, 1, 2}), Stability::Unstable);
    EXPECT_EQ(classify_routh({1, 1, 1}), Stability::Nonhyperbolic);
}

// --- global stability conditions ----------------------------------------------------

TEST(GasConditions, SubThreshold)
{
    const auto g = check_dfe_gas_conditions(table_A(1), 1000);
    EXPECT_TRUE(g.h1);
    EXPECT_TRUE(g.h2_offdiag);
    EXPECT_TRUE(g.h2_ghat_nonneg);
    EXPECT_LT(g.a_spectral_abscissa, 0.0);
    EXPECT_EQ(g.samples, 1000);
    EXPECT_EQ(g.seed, default_gas_seed);
}

TEST(GasConditions, SuperThreshold)
{
    const auto g = check_dfe_gas_conditions(table_B(1), 1000);
    EXPECT_TRUE(g.h2_offdiag);
    EXPECT_TRUE(g.h2_ghat_nonneg);
    EXPECT_GT(g.a_spectral_abscissa, 0.0);
}

TEST(GasConditions, AbscissaAgreesWithEigenSolver)
{
    const auto p = table_A(4);
    const double direct = gas_matrix(p).eigenvalues().real().maxCoeff();
    EXPECT_NEAR(check_dfe_gas_conditions(p, 1).a_spectral_abscissa, direct, 1e-14);
}

TEST(GasConditions, SignTracksThreshold)
{
    std::mt19937_64 rng(505);
    for (int k = 0; k < 300; ++k) {
        const auto base = sishd::testing::random_params(rng);
        for (double target : {0.3, 0.95, 0.9999, 1.0001, 1.05, 4.0}) {
            const auto p = sishd::testing::with_r0(base, target);
            const double a = check_dfe_gas_conditions(p, 1).a_spectral_abscissa;
            EXPECT_EQ(a > 0, compute_r0(p) > 1) << "R0 target " << target;
        }
    }
}

TEST(GasConditions, SamplesStayInRegion)
{
    std::mt19937_64 rng(7);
    for (int k = 0; k < 1000; ++k) {
        const State x = sample_feasible(1000.0, rng);
        EXPECT_TRUE(in_feasible_region(table_A(1), x, 1e-9));
    }
    EXPECT_THROW(check_dfe_gas_conditions(table_A(1), 0), ValidationError);
}

// --- sensitivity -------------------------------------------------------------------

TEST(Sensitivity, LinearParametersHaveUnitIndex)
{
    std::mt19937_64 rng(606);
    for (int k = 0; k < 100; ++k) {
        const auto s = sensitivity_indices(sishd::testing::random_params(rng));
        EXPECT_EQ(s.at(Param::beta).normalized_index, 1.0);
        EXPECT_EQ(s.at(Param::Lambda).normalized_index, 1.0);
    }
}

TEST(Sensitivity, SignsForB4)
{
    const auto s = sensitivity_indices(table_B(4));
    EXPECT_GT(s.at(Param::beta).normalized_index, 0);
    EXPECT_GT(s.at(Param::epsilon).normalized_index, 0);
    EXPECT_LT(s.at(Param::alpha_I).normalized_index, 0);
    EXPECT_LT(s.at(Param::gamma_I).normalized_index, 0);
    EXPECT_LT(s.at(Param::alpha_H).normalized_index, 0);
    EXPECT_LT(s.at(Param::gamma_H).normalized_index, 0);
    EXPECT_EQ(s.size(), 9u);
}

TEST(Sensitivity, PartialsMatchFiniteDifferences)
{
    std::mt19937_64 rng(707);
    std::vector<ModelParams> sets;
    for (int k = 1; k <= 5; ++k) {
        sets.push_back(table_A(k));
        sets.push_back(table_B(k));
    }
    for (int k = 0; k < 200; ++k) {
        auto p = sishd::testing::random_params(rng);
        sets.push_back(p.with(Param::epsilon, 0.02 + 0.96 * p.epsilon()));
    }
    for (const auto& p : sets) {
        const auto s = sensitivity_indices(p);
        const double r0 = compute_r0(p);
        for (Param q : all_params) {
            const double v = p[q];
            const double h = 1e-7 * v;
            const double fd = (compute_r0(p.with(q, v + h)) - compute_r0(p.with(q, v - h))) / (2 * h);
            const double an = s.at(q).partial;
            // Cancellation error of the difference scales with R0 / v, not with the partial.
            EXPECT_NEAR(fd, an, 1e-5 * std::max(std::abs(an), r0 / v)) << param_name(q);
            EXPECT_NEAR(s.at(q).normalized_index, an * v / r0, 1e-12 * std::max(1.0, std::abs(an * v / r0)))
                << param_name(q);
        }
    }
}
