#ifndef SISHD_PUBLISHED_HPP
#define SISHD_PUBLISHED_HPP

#include <array>
#include <string_view>

#include "sishd/model.hpp"

// Published reference values for the ten parameter sets (A1-A5 with R0 < 1, B1-B5 with
// R0 > 1), the five initial conditions, and the zero-profit premiums for benefits
// (b_I, b_H, d) = (1, 20, 100) over 365 days. Betas for B1-B5 are printed rounded.

namespace sishd::published {

struct ParamSet {
    std::string_view name;
    Rates rates;
    double r0;
};

inline constexpr std::array<ParamSet, 5> table_A = {{
    {"A1", {20.0, 0.02, 0.00012, 0.20, 0.05, 0.10, 0.02, 0.05, 0.01}, 0.6632},
    {"A2", {20.0, 0.02, 0.00018, 0.25, 0.06, 0.12, 0.03, 0.06, 0.02}, 0.8413},
    {"A3", {30.0, 0.03, 0.00010, 0.15, 0.04, 0.08, 0.01, 0.04, 0.01}, 0.6367},
    {"A4", {10.0, 0.01, 0.00020, 0.30, 0.08, 0.15, 0.02, 0.05, 0.02}, 0.8269},
    {"A5", {25.0, 0.025, 0.00014, 0.10, 0.05, 0.09, 0.03, 0.06, 0.015}, 0.7395},
}};

struct EndemicSet {
    std::string_view name;
    Rates rates;
    double r0;
    double S, I, H;
};

inline constexpr std::array<EndemicSet, 5> table_B = {{
    {"B1", {20, 0.02, 0.000154, 0.20, 0.02, 0.05, 0.02, 0.03, 0.005}, 1.5, 666.67, 75.60, 27.49},
    {"B2", {20, 0.02, 0.000253, 0.25, 0.03, 0.06, 0.03, 0.04, 0.010}, 2.0, 500.00, 94.59, 40.54},
    {"B3", {30, 0.03, 0.000239, 0.15, 0.01, 0.04, 0.02, 0.03, 0.005}, 2.5, 400.00, 203.48, 62.61},
    {"B4", {10, 0.01, 0.000318, 0.30, 0.02, 0.05, 0.02, 0.04, 0.010}, 3.5, 285.71, 93.17, 31.06},
    {"B5", {25, 0.025, 0.000649, 0.10, 0.03, 0.05, 0.03, 0.04, 0.010}, 5.0, 200.00, 198.02, 79.21},
}};

struct Initial {
    std::string_view label;
    State state;
};

inline constexpr std::array<Initial, 5> initials = {{
    {"IC1", {800, 100, 100, 0}},
    {"IC2", {700, 200, 50, 0}},
    {"IC3", {500, 250, 250, 0}},
    {"IC4", {600, 100, 300, 0}},
    {"IC5", {400, 300, 300, 0}},
}};

/// Zero-profit premium, indexed [B-set][initial].
inline constexpr std::array<std::array<double, 5>, 5> premium = {{
    {1.93896, 1.91942, 2.26632, 2.24263, 2.36076},
    {3.70673, 3.67883, 4.04164, 4.01615, 4.13672},
    {6.33601, 6.38258, 6.85861, 6.73363, 6.99956},
    {5.83294, 5.7334, 6.4421, 6.43625, 6.62139},
    {16.3427, 16.3699, 17.1336, 16.9398, 17.3489},
}};

/// Reported minimal admissible premium for B2 / IC1.
inline constexpr double pi_star_B2_IC1 = 5.67475;

inline constexpr double horizon = 365.0;
inline constexpr double b_I = 1.0;
inline constexpr double b_H = 20.0;
inline constexpr double d = 100.0;

inline constexpr double tol_r0_A_abs = 5e-4;
inline constexpr double tol_r0_B_rel = 0.01;
inline constexpr double tol_equilibrium_rel = 0.005;
inline constexpr double tol_premium_rel = 0.01;

} // namespace sishd::published

#endif
