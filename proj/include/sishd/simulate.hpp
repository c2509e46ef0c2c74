#ifndef SISHD_SIMULATE_HPP
#define SISHD_SIMULATE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sishd/model.hpp"

namespace sishd {

/// Largest undershoot below zero tolerated before integration is aborted.
inline constexpr double positivity_tol = 1e-9;

/// Default step in days.
inline constexpr double default_step = 1e-3;

inline constexpr std::size_t max_grid_steps = 200'000'000;

struct SimConfig {
    double t0 = 0.0;
    double t_end = 365.0;
    double step = default_step;
    State initial;
    /// Constant force of interest r; integrands are weighted by exp(-r (t - t0)). Zero reproduces
    /// the undiscounted pricing formulas.
    double force_of_interest = 0.0;

    bool operator==(const SimConfig&) const = default;
};

inline void validate(const SimConfig& cfg)
{
    if (!std::isfinite(cfg.t0) || !std::isfinite(cfg.t_end) || !std::isfinite(cfg.step)) {
        throw ValidationError("sim: times must be finite");
    }
    if (!(cfg.step > 0)) {
        throw ValidationError("sim.step: must be positive");
    }
    if (!(cfg.t_end > cfg.t0)) {
        throw ValidationError("sim.t_end: must exceed t0");
    }
    if ((cfg.t_end - cfg.t0) / cfg.step > static_cast<double>(max_grid_steps)) {
        throw ValidationError("sim.step: grid too large for the horizon");
    }
    if (!(cfg.force_of_interest >= 0) || !std::isfinite(cfg.force_of_interest)) {
        throw ValidationError("sim.force_of_interest: must be finite and nonnegative");
    }
    try {
        require_valid_state(cfg.initial);
    }
    catch (const ValidationError& e) {
        throw ValidationError(std::string("sim.initial: ") + e.what());
    }
}

/// State extended with the discount weight and the running integrals used by pricing.
struct AugmentedState {
    enum Index : std::size_t { S, I, H, D, Weight, CumS, CumI, CumH, CumDeaths, CumD, Size };

    std::array<double, Size> v{};

    static AugmentedState start(const State& x)
    {
        AugmentedState a;
        a.v[S] = x.S;
        a.v[I] = x.I;
        a.v[H] = x.H;
        a.v[D] = x.D;
        a.v[Weight] = 1.0;
        return a;
    }

    State state() const { return {v[S], v[I], v[H], v[D]}; }
    double operator[](std::size_t i) const { return v[i]; }
    double& operator[](std::size_t i) { return v[i]; }
};

namespace detail {

inline AugmentedState augmented_rhs(const ModelParams& p, const AugmentedState& a, double r)
{
    using A = AugmentedState;
    const StateDerivative f = rhs(p, a[A::S], a[A::I], a[A::H]);
    const double w = a[A::Weight];
    AugmentedState d;
    d[A::S] = f.dS;
    d[A::I] = f.dI;
    d[A::H] = f.dH;
    d[A::D] = f.dD;
    d[A::Weight] = -r * w;
    d[A::CumS] = w * a[A::S];
    d[A::CumI] = w * a[A::I];
    d[A::CumH] = w * a[A::H];
    d[A::CumDeaths] = w * f.dD;
    d[A::CumD] = w * a[A::D];
    return d;
}

inline AugmentedState axpy(const AugmentedState& x, double h, const AugmentedState& k)
{
    AugmentedState out;
    for (std::size_t i = 0; i < AugmentedState::Size; ++i) {
        out.v[i] = x.v[i] + h * k.v[i];
    }
    return out;
}

} // namespace detail

/// One classical fourth-order Runge-Kutta step of the augmented system.
inline AugmentedState rk4_step(const ModelParams& p, const AugmentedState& x, double h,
                               double force_of_interest = 0.0)
{
    if (!(h > 0) || !std::isfinite(h)) {
        throw ValidationError("rk4_step: step must be positive and finite");
    }
    const double r = force_of_interest;
    const AugmentedState k1 = detail::augmented_rhs(p, x, r);
    const AugmentedState k2 = detail::augmented_rhs(p, detail::axpy(x, 0.5 * h, k1), r);
    const AugmentedState k3 = detail::augmented_rhs(p, detail::axpy(x, 0.5 * h, k2), r);
    const AugmentedState k4 = detail::augmented_rhs(p, detail::axpy(x, h, k3), r);
    AugmentedState out;
    for (std::size_t i = 0; i < AugmentedState::Size; ++i) {
        out.v[i] = x.v[i] + h / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
        if (!std::isfinite(out.v[i])) {
            throw NumericalError("rk4_step: non-finite value produced");
        }
    }
    return out;
}

/// Integrated path on a fixed grid together with the running (discount-weighted) integrals
/// of S, I, H, the death flow gamma_I I + gamma_H H, and D.
struct Trajectory {
    ModelParams params;
    double force_of_interest = 0.0;
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> cum_S;
    std::vector<double> cum_I;
    std::vector<double> cum_H;
    std::vector<double> cum_deaths;
    std::vector<double> cum_D;
    std::vector<double> weight;

    std::size_t size() const { return times.size(); }
    double t0() const { return times.front(); }
    double t_end() const { return times.back(); }
};

/// Number of steps covering [t0, t_end]: whole steps plus one shortened step when the
/// step does not divide the interval.
struct Grid {
    std::size_t full_steps = 0;
    bool has_partial = false;

    std::size_t steps() const { return full_steps + (has_partial ? 1 : 0); }
};

inline Grid make_grid(double t0, double t_end, double h)
{
    const double q = (t_end - t0) / h;
    const double nearest = std::round(q);
    Grid g;
    if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, q)) {
        g.full_steps = static_cast<std::size_t>(nearest);
    }
    else {
        g.full_steps = static_cast<std::size_t>(std::floor(q));
        g.has_partial = true;
    }
    return g;
}

inline Trajectory integrate(const ModelParams& p, const SimConfig& cfg)
{
    validate(cfg);
    const Grid grid = make_grid(cfg.t0, cfg.t_end, cfg.step);
    const std::size_t n = grid.steps() + 1;

    Trajectory tr{p, cfg.force_of_interest, {}, {}, {}, {}, {}, {}, {}, {}};
    tr.times.reserve(n);
    tr.states.reserve(n);
    tr.cum_S.reserve(n);
    tr.cum_I.reserve(n);
    tr.cum_H.reserve(n);
    tr.cum_deaths.reserve(n);
    tr.cum_D.reserve(n);
    tr.weight.reserve(n);

    using A = AugmentedState;
    auto record = [&tr](double t, const AugmentedState& a) {
        tr.times.push_back(t);
        tr.states.push_back(a.state());
        tr.cum_S.push_back(a[A::CumS]);
        tr.cum_I.push_back(a[A::CumI]);
        tr.cum_H.push_back(a[A::CumH]);
        tr.cum_deaths.push_back(a[A::CumDeaths]);
        tr.cum_D.push_back(a[A::CumD]);
        tr.weight.push_back(a[A::Weight]);
    };

    AugmentedState a = AugmentedState::start(cfg.initial);
    record(cfg.t0, a);
    for (std::size_t k = 1; k <= grid.steps(); ++k) {
        const bool last_partial = grid.has_partial && k == grid.steps();
        const double t = last_partial ? cfg.t_end : cfg.t0 + static_cast<double>(k) * cfg.step;
        const double h = t - tr.times.back();
        a = rk4_step(p, a, h, cfg.force_of_interest);
        for (std::size_t i : {A::S, A::I, A::H, A::D}) {
            if (a[i] < -positivity_tol) {
                throw NumericalError("integrate: positivity breach at t = " + std::to_string(t));
            }
        }
        record(t, a);
    }
    return tr;
}

/// Integrals over [t, T] (discount-weighted, valued at t0) of S, I, H, the death flow and D.
struct TailIntegrals {
    double S = 0;
    double I = 0;
    double H = 0;
    double deaths = 0;
    double D = 0;
};

namespace detail {

inline double interp(const std::vector<double>& ys, std::size_t k, double frac)
{
    return frac == 0.0 ? ys[k] : ys[k] + frac * (ys[k + 1] - ys[k]);
}

} // namespace detail

/// Tail integrals at grid index k; exact differences of the cumulants.
inline TailIntegrals tail_integrals_at(const Trajectory& tr, std::size_t k)
{
    const std::size_t m = tr.size() - 1;
    return {tr.cum_S[m] - tr.cum_S[k], tr.cum_I[m] - tr.cum_I[k], tr.cum_H[m] - tr.cum_H[k],
            tr.cum_deaths[m] - tr.cum_deaths[k], tr.cum_D[m] - tr.cum_D[k]};
}

/// Tail integrals at an arbitrary time; cumulants are linearly interpolated off-grid.
inline TailIntegrals tail_integrals(const Trajectory& tr, double t)
{
    if (!(t >= tr.t0() && t <= tr.t_end())) {
        throw ValidationError("tail_integrals: t outside the trajectory horizon");
    }
    const auto it = std::upper_bound(tr.times.begin(), tr.times.end(), t);
    if (it == tr.times.end()) {
        return {};
    }
    const std::size_t k = static_cast<std::size_t>(it - tr.times.begin()) - 1;
    const double frac = (t - tr.times[k]) / (tr.times[k + 1] - tr.times[k]);
    const std::size_t m = tr.size() - 1;
    using detail::interp;
    return {tr.cum_S[m] - interp(tr.cum_S, k, frac), tr.cum_I[m] - interp(tr.cum_I, k, frac),
            tr.cum_H[m] - interp(tr.cum_H, k, frac), tr.cum_deaths[m] - interp(tr.cum_deaths, k, frac),
            tr.cum_D[m] - interp(tr.cum_D, k, frac)};
}

/// State with undershoots in [-positivity_tol, 0) reported as zero.
inline State clamped(const State& x)
{
    auto c = [](double v) { return v < 0.0 && v >= -positivity_tol ? 0.0 : v; };
    return {c(x.S), c(x.I), c(x.H), c(x.D)};
}

} // namespace sishd

#endif
