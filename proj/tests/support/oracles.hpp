// Test-only reference computations, kept independent of the library code they check.
#ifndef SISHD_TESTS_ORACLES_HPP
#define SISHD_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "sishd/model.hpp"
#include "sishd/published.hpp"

namespace sishd::testing {

inline ModelParams table_A(int k) { return ModelParams(published::table_A.at(k - 1).rates); }
inline ModelParams table_B(int k) { return ModelParams(published::table_B.at(k - 1).rates); }
inline State initial(int k) { return published::initials.at(k - 1).state; }

/// Random valid parameters spanning a few orders of magnitude.
template <class Rng>
ModelParams random_params(Rng& rng)
{
    auto logu = [&](double lo, double hi) {
        std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
        return std::exp(u(rng));
    };
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Rates r;
    r.Lambda = logu(0.5, 200.0);
    r.mu = logu(1e-3, 0.2);
    r.beta = logu(1e-6, 1e-2);
    r.epsilon = unit(rng);
    r.alpha_I = logu(1e-3, 0.5);
    r.gamma_I = logu(1e-3, 0.5);
    r.delta = logu(1e-3, 0.5);
    r.gamma_H = logu(1e-3, 0.5);
    r.alpha_H = logu(1e-3, 0.5);
    return ModelParams(r);
}

/// Direct transcription of the reproduction number, used only to invert it for beta.
inline double r0_per_beta(const Rates& r)
{
    const double kI = r.alpha_I + r.gamma_I + r.mu + r.delta;
    const double kH = r.gamma_H + r.mu + r.alpha_H;
    return r.Lambda * (kH + r.epsilon * r.delta) / (r.mu * kI * kH);
}

/// Same parameters with beta chosen so that R0 equals `target`.
inline ModelParams with_r0(const ModelParams& p, double target)
{
    return p.with(Param::beta, target / r0_per_beta(p.rates()));
}

/// Roots of lambda^3 + a1 lambda^2 + a2 lambda + a3 by Cardano's formula in complex arithmetic.
inline std::array<std::complex<double>, 3> cubic_roots(double a1, double a2, double a3)
{
    using C = std::complex<double>;
    const double p = a2 - a1 * a1 / 3.0;
    const double q = 2.0 * a1 * a1 * a1 / 27.0 - a1 * a2 / 3.0 + a3;
    const C disc = std::sqrt(C(q * q / 4.0 + p * p * p / 27.0));
    C u = std::pow(C(-q / 2.0) + disc, 1.0 / 3.0);
    if (std::abs(u) < 1e-300) {
        u = std::pow(C(-q / 2.0) - disc, 1.0 / 3.0);
    }
    const C omega(-0.5, std::sqrt(3.0) / 2.0);
    std::array<C, 3> roots;
    C w(1.0, 0.0);
    for (auto& r : roots) {
        const C uk = u * w;
        const C t = std::abs(uk) < 1e-300 ? C(0.0) : uk - p / (3.0 * uk);
        r = t - a1 / 3.0;
        w *= omega;
    }
    // One Newton polish per root.
    for (auto& r : roots) {
        const C f = ((r + a1) * r + a2) * r + a3;
        const C df = (3.0 * r + 2.0 * a1) * r + a2;
        if (std::abs(df) > 0) {
            r -= f / df;
        }
    }
    return roots;
}

/// Largest distance from each of `a` to its nearest unused element of `b`.
template <class A, class B>
double match_distance(const A& a, const B& b)
{
    std::array<bool, 3> used{};
    double worst = 0;
    for (const auto& x : a) {
        double best = INFINITY;
        std::size_t at = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            if (!used[j] && std::abs(x - b[j]) < best) {
                best = std::abs(x - b[j]);
                at = j;
            }
        }
        used[at] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace sishd::testing

#endif
