#ifndef SISHD_ANALYSIS_HPP
#define SISHD_ANALYSIS_HPP

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string_view>

#include <Eigen/Dense>

#include "sishd/model.hpp"

namespace sishd {

enum class Stability { LocallyStable, Unstable, Nonhyperbolic };

constexpr std::string_view stability_name(Stability s)
{
    switch (s) {
    case Stability::LocallyStable: return "LocallyStable";
    case Stability::Unstable: return "Unstable";
    case Stability::Nonhyperbolic: return "Nonhyperbolic";
    }
    return "?";
}

/// Positive steady state (S*, I*, H*).
struct Equilibrium {
    double S = 0;
    double I = 0;
    double H = 0;

    State as_state(double D = 0.0) const { return {S, I, H, D}; }
};

/// Coefficients of the characteristic polynomial lambda^3 + a1 lambda^2 + a2 lambda + a3.
struct RouthCoefficients {
    double a1 = 0;
    double a2 = 0;
    double a3 = 0;

    /// a1 > 0, a3 > 0 and a1 a2 - a3 > 0.
    bool hurwitz_stable() const { return a1 > 0 && a3 > 0 && a1 * a2 - a3 > 0; }
};

using Eigenvalues3 = std::array<std::complex<double>, 3>;

struct AnalysisReport {
    double r0 = 0;
    State dfe;
    std::optional<Equilibrium> dee;
    Stability dfe_stability = Stability::Nonhyperbolic;
    std::optional<Stability> dee_stability;
    std::optional<RouthCoefficients> routh;
    /// Jacobian eigenvalues at the endemic equilibrium, when it exists.
    std::optional<Eigenvalues3> dee_eigenvalues;
};

inline constexpr double default_hyperbolicity_tol = 1e-9;

// ---------------------------------------------------------------------------
// Reproduction number

inline double compute_r0(const ModelParams& p)
{
    const double kH = p.exit_H();
    return p.beta() * p.Lambda() * (kH + p.epsilon() * p.delta()) / (p.mu() * p.exit_I() * kH);
}

/// Spectral radius of F V^-1 built from the infected-compartment blocks at the
/// disease-free equilibrium. Independent of compute_r0.
inline double r0_ngm_oracle(const ModelParams& p)
{
    const double s0 = p.Lambda() / p.mu();
    Eigen::Matrix2d F;
    F << p.beta() * s0, p.beta() * p.epsilon() * s0,
         0.0, 0.0;
    Eigen::Matrix2d V;
    V << p.alpha_I() + p.gamma_I() + p.mu() + p.delta(), 0.0,
         -p.delta(), p.gamma_H() + p.mu() + p.alpha_H();
    const Eigen::Matrix2d ngm = F * V.inverse();
    return ngm.eigenvalues().cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Equilibria

inline State disease_free_equilibrium(const ModelParams& p) { return {p.carrying_level(), 0.0, 0.0, 0.0}; }

inline std::optional<Equilibrium> disease_endemic_equilibrium(const ModelParams& p)
{
    if (!(compute_r0(p) > 1.0)) {
        return std::nullopt;
    }
    const double kI = p.exit_I();
    const double kH = p.exit_H();
    const double s = kI * kH / (p.beta() * (kH + p.epsilon() * p.delta()));
    // (gamma_I + mu + delta) kH - alpha_H delta, expanded so it is visibly positive.
    const double denom = (p.gamma_I() + p.mu()) * kH + p.delta() * (p.gamma_H() + p.mu());
    const double i = kH * (p.Lambda() - p.mu() * s) / denom;
    const double h = p.delta() * i / kH;
    if (!(i > 0.0) || !(h > 0.0)) {
        // R0 a hair above 1 can round Lambda - mu S* to zero.
        return std::nullopt;
    }
    return Equilibrium{s, i, h};
}

// ---------------------------------------------------------------------------
// Linearization

inline Eigen::Matrix3d jacobian(const ModelParams& p, const State& x)
{
    const double b = p.beta();
    const double e = p.epsilon();
    Eigen::Matrix3d J;
    J << -b * x.I - b * e * x.H - p.mu(), -b * x.S + p.alpha_I(), -b * e * x.S + p.alpha_H(),
         b * x.I + b * e * x.H, b * x.S - p.exit_I(), b * e * x.S,
         0.0, p.delta(), -p.exit_H();
    return J;
}

inline Eigenvalues3 eigenvalues(const Eigen::Matrix3d& m)
{
    const Eigen::EigenSolver<Eigen::Matrix3d> solver(m, false);
    const auto& ev = solver.eigenvalues();
    Eigenvalues3 out{ev(0), ev(1), ev(2)};
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

inline double spectral_abscissa(const Eigenvalues3& ev)
{
    return std::max({ev[0].real(), ev[1].real(), ev[2].real()});
}

/// Characteristic coefficients from trace, principal minors and determinant.
inline RouthCoefficients characteristic_coefficients(const Eigen::Matrix3d& J)
{
    const double m01 = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
    const double m02 = J(0, 0) * J(2, 2) - J(0, 2) * J(2, 0);
    const double m12 = J(1, 1) * J(2, 2) - J(1, 2) * J(2, 1);
    return {-J.trace(), m01 + m02 + m12, -J.determinant()};
}

/// Routh coefficients of the Jacobian at the endemic equilibrium.
/// Throws NoEndemicEquilibrium when R0 <= 1.
inline RouthCoefficients routh_coefficients(const ModelParams& p)
{
    const auto dee = disease_endemic_equilibrium(p);
    if (!dee) {
        throw NoEndemicEquilibrium();
    }
    return characteristic_coefficients(jacobian(p, dee->as_state()));
}

/// The same coefficients through the closed-form expressions in S*, M0, M1, M2.
/// Used to cross-check routh_coefficients.
inline RouthCoefficients routh_coefficients_symbolic(const ModelParams& p)
{
    const auto dee = disease_endemic_equilibrium(p);
    if (!dee) {
        throw NoEndemicEquilibrium();
    }
    const double mu = p.mu();
    const double aI = p.alpha_I(), aH = p.alpha_H();
    const double gI = p.gamma_I(), gH = p.gamma_H();
    const double d = p.delta(), e = p.epsilon(), b = p.beta();
    const double kH = p.exit_H();

    const double m0 = p.Lambda() - mu * dee->S;
    const double m1 = kH / ((gI + mu + d) * kH - aH * d);
    const double m2 = d / kH;
    const double bb = m2;

    const double bS = b * dee->S;
    const double bM = b * m0 * m1;
    const double beM = b * e * bb * m0 * m1;

    const double pairs = aH * aI + aH * d + aH * gI + aI * gH + d * gH + gH * gI;
    const double rates = aH + aI + d + gH + gI;
    const double tail2 = aH + d + gH + gI + 2 * mu;
    const double tail3 = mu * mu + mu * (aH + d + gH + gI) + aH * gI + d * gH + gH * gI;

    RouthCoefficients c;
    c.a1 = (rates + 3 * mu) - bS + bM + beM;
    c.a2 = pairs + 2 * mu * rates + 3 * mu * mu + bS * (-aH - gH - 2 * mu - e * d) + bM * tail2 + beM * tail2;
    c.a3 = mu * mu * mu + mu * mu * rates + mu * pairs + bS * (-mu * mu - mu * (aH + gH + e * d)) + bM * tail3 +
           beM * tail3;
    return c;
}

// ---------------------------------------------------------------------------
// Stability classification

inline Stability classify_dfe(double r0, double eta = default_hyperbolicity_tol)
{
    if (r0 < 1.0 - eta) {
        return Stability::LocallyStable;
    }
    if (r0 > 1.0 + eta) {
        return Stability::Unstable;
    }
    return Stability::Nonhyperbolic;
}

inline Stability classify_routh(const RouthCoefficients& c)
{
    const double hurwitz = c.a1 * c.a2 - c.a3;
    if (c.a1 > 0 && c.a3 > 0 && hurwitz > 0) {
        return Stability::LocallyStable;
    }
    if (c.a1 < 0 || c.a3 < 0 || hurwitz < 0) {
        return Stability::Unstable;
    }
    return Stability::Nonhyperbolic;
}

inline AnalysisReport classify_stability(const ModelParams& p, double eta = default_hyperbolicity_tol)
{
    AnalysisReport rep;
    rep.r0 = compute_r0(p);
    rep.dfe = disease_free_equilibrium(p);
    rep.dfe_stability = classify_dfe(rep.r0, eta);
    rep.dee = disease_endemic_equilibrium(p);
    if (rep.dee) {
        const Eigen::Matrix3d J = jacobian(p, rep.dee->as_state());
        rep.routh = characteristic_coefficients(J);
        rep.dee_stability = classify_routh(*rep.routh);
        rep.dee_eigenvalues = eigenvalues(J);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Global stability conditions for the disease-free equilibrium

struct GasReport {
    bool h1 = false;
    bool h2_offdiag = false;
    bool h2_ghat_nonneg = false;
    double a_spectral_abscissa = 0;
    std::uint64_t seed = 0;
    int samples = 0;
};

inline constexpr std::uint64_t default_gas_seed = 20240917;

/// Linear part A of the infected subsystem at X* = Lambda/mu.
inline Eigen::Matrix2d gas_matrix(const ModelParams& p)
{
    const double x = p.carrying_level();
    Eigen::Matrix2d A;
    A << p.beta() * x - p.exit_I(), p.beta() * p.epsilon() * x,
         p.delta(), -p.exit_H();
    return A;
}

/// Uniform sample of the simplex {S, I, H >= 0, S + I + H <= bound}.
template <class Rng>
State sample_feasible(double bound, Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<double, 3> c{u(rng), u(rng), u(rng)};
    std::sort(c.begin(), c.end());
    return {bound * c[0], bound * (c[1] - c[0]), bound * (c[2] - c[1]), 0.0};
}

inline GasReport check_dfe_gas_conditions(const ModelParams& p, int sample_count,
                                          std::uint64_t seed = default_gas_seed)
{
    if (sample_count < 1) {
        throw ValidationError("sample_count must be at least 1");
    }
    GasReport rep;
    rep.seed = seed;
    rep.samples = sample_count;
    // X' = Lambda - mu X has the globally attracting fixed point Lambda/mu.
    rep.h1 = p.mu() > 0;

    const Eigen::Matrix2d A = gas_matrix(p);
    rep.h2_offdiag = A(0, 1) >= 0 && A(1, 0) >= 0;
    // Off-diagonals are nonnegative so the eigenvalues are real.
    const double half_trace = 0.5 * A.trace();
    const double half_gap = 0.5 * (A(0, 0) - A(1, 1));
    rep.a_spectral_abscissa = half_trace + std::sqrt(half_gap * half_gap + A(0, 1) * A(1, 0));

    const double bound = p.carrying_level();
    std::mt19937_64 rng(seed);
    rep.h2_ghat_nonneg = true;
    for (int k = 0; k < sample_count; ++k) {
        const State x = sample_feasible(bound, rng);
        const double gap = bound - x.S;
        const double ghat = p.beta() * x.I * gap + p.beta() * p.epsilon() * x.H * gap;
        if (ghat < 0) {
            rep.h2_ghat_nonneg = false;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Sensitivity of R0

struct Sensitivity {
    double partial = 0;          ///< dR0/dp
    double normalized_index = 0; ///< (dR0/dp) p / R0
};

using SensitivityReport = std::map<Param, Sensitivity>;

/// Analytic partials and normalized forward sensitivity indices of R0 for all
/// nine parameters.
inline SensitivityReport sensitivity_indices(const ModelParams& p)
{
    const double L = p.Lambda(), mu = p.mu(), b = p.beta(), e = p.epsilon(), d = p.delta();
    const double kI = p.exit_I();
    const double kH = p.exit_H();
    const double r0 = compute_r0(p);
    const double den = mu * kI * kH;
    const double hosp = kH + e * d;

    SensitivityReport s;
    s[Param::beta].partial = L * hosp / den;
    s[Param::epsilon].partial = b * L * d / den;
    s[Param::alpha_I].partial = -b * L * hosp / (mu * kI * kI * kH);
    s[Param::gamma_I].partial = s[Param::alpha_I].partial;
    s[Param::alpha_H].partial = -b * L * e * d / (mu * kI * kH * kH);
    s[Param::gamma_H].partial = s[Param::alpha_H].partial;
    s[Param::Lambda].partial = b * hosp / den;
    // d ln R0 / d mu = -1/mu - 1/kI - e d / (kH (kH + e d))
    s[Param::mu].partial = -r0 * (1.0 / mu + 1.0 / kI + e * d / (kH * hosp));
    // d ln R0 / d delta = -1/kI + e / (kH + e d)
    s[Param::delta].partial = r0 * (-1.0 / kI + e / hosp);

    // Indices from the simplified elasticities; beta and Lambda enter linearly.
    s[Param::beta].normalized_index = 1.0;
    s[Param::Lambda].normalized_index = 1.0;
    s[Param::epsilon].normalized_index = e * d / hosp;
    s[Param::alpha_I].normalized_index = -p.alpha_I() / kI;
    s[Param::gamma_I].normalized_index = -p.gamma_I() / kI;
    s[Param::alpha_H].normalized_index = -p.alpha_H() * e * d / (kH * hosp);
    s[Param::gamma_H].normalized_index = -p.gamma_H() * e * d / (kH * hosp);
    s[Param::mu].normalized_index = -1.0 - mu / kI - mu * e * d / (kH * hosp);
    s[Param::delta].normalized_index = -d / kI + e * d / hosp;
    return s;
}

} // namespace sishd

#endif
