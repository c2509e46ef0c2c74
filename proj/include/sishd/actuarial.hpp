#ifndef SISHD_ACTUARIAL_HPP
#define SISHD_ACTUARIAL_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "sishd/simulate.hpp"

namespace sishd {

/// Benefit rates b_I, b_H (currency per individual-day) and the lump sum d per disease death.
struct BenefitSchedule {
    double b_I = 0;
    double b_H = 0;
    double d = 0;

    bool operator==(const BenefitSchedule&) const = default;
};

inline void validate(const BenefitSchedule& b)
{
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v < 0) {
            throw ValidationError(std::string("benefits.") + name + ": must be finite and nonnegative");
        }
    };
    check(b.b_I, "b_I");
    check(b.b_H, "b_H");
    check(b.d, "d");
}

/// How the lump-sum death benefit enters the outgo.
///   Flow:  d * integral of (gamma_I I + gamma_H H), i.e. paid per death in the period.
///   Stock: d * integral of D, the cumulative-deaths compartment.
enum class DeathBenefitMode { Flow, Stock };

constexpr std::string_view death_mode_name(DeathBenefitMode m)
{
    return m == DeathBenefitMode::Flow ? "flow" : "stock";
}

inline DeathBenefitMode parse_death_mode(std::string_view s)
{
    if (s == "flow") {
        return DeathBenefitMode::Flow;
    }
    if (s == "stock") {
        return DeathBenefitMode::Stock;
    }
    throw ValidationError("death-benefit mode must be 'flow' or 'stock', got '" + std::string(s) + "'");
}

struct ReserveCurve {
    double premium = 0;
    std::vector<double> times;
    std::vector<double> values;

    double min() const { return *std::min_element(values.begin(), values.end()); }
};

struct PricingReport {
    double pi_zero_profit = 0;
    double pi_star = 0;
    double horizon = 0;
    DeathBenefitMode mode = DeathBenefitMode::Flow;
    /// One curve per requested multiple of pi_star.
    std::vector<double> multipliers;
    std::vector<ReserveCurve> reserves;
};

namespace detail {

inline double outgo(const TailIntegrals& tail, const BenefitSchedule& b, DeathBenefitMode mode)
{
    const double deaths = mode == DeathBenefitMode::Flow ? tail.deaths : tail.D;
    return b.b_I * tail.I + b.b_H * tail.H + b.d * deaths;
}

} // namespace detail

/// Premium rate equating premium income over [t0, T] with benefit outgo.
inline double zero_profit_premium(const Trajectory& tr, const BenefitSchedule& ben,
                                  DeathBenefitMode mode = DeathBenefitMode::Flow)
{
    validate(ben);
    const TailIntegrals full = tail_integrals_at(tr, 0);
    if (!(full.S > 0)) {
        throw NumericalError("zero_profit_premium: degenerate trajectory, integral of S is zero");
    }
    return detail::outgo(full, ben, mode) / full.S;
}

/// Reserve V(t) = pi * int_t^T S - outgo over [t, T], valued at time t, on the trajectory grid.
inline ReserveCurve reserve_curve(const Trajectory& tr, const BenefitSchedule& ben, double pi,
                                  DeathBenefitMode mode = DeathBenefitMode::Flow)
{
    validate(ben);
    if (!(pi >= 0) || !std::isfinite(pi)) {
        throw ValidationError("reserve_curve: premium must be finite and nonnegative");
    }
    ReserveCurve curve;
    curve.premium = pi;
    curve.times = tr.times;
    curve.values.resize(tr.size());
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const TailIntegrals tail = tail_integrals_at(tr, k);
        curve.values[k] = (pi * tail.S - detail::outgo(tail, ben, mode)) / tr.weight[k];
    }
    return curve;
}

/// Smallest premium keeping V(t) >= 0 on the grid: the maximum over t of outgo / income
/// over [t, T], including the instantaneous limit at T.
inline double minimal_admissible_premium(const Trajectory& tr, const BenefitSchedule& ben,
                                         DeathBenefitMode mode = DeathBenefitMode::Flow)
{
    validate(ben);
    const std::size_t m = tr.size() - 1;
    const double h = tr.times[1] - tr.times[0];
    const double floor = 1e-12 * tr.params.carrying_level() * h;

    double best = -INFINITY;
    for (std::size_t k = 0; k < m; ++k) {
        const TailIntegrals tail = tail_integrals_at(tr, k);
        if (!(tail.S > 0)) {
            throw NumericalError("minimal_admissible_premium: tail integral of S vanished at t = " +
                                 std::to_string(tr.times[k]));
        }
        if (tail.S < floor) {
            continue;
        }
        best = std::max(best, detail::outgo(tail, ben, mode) / tail.S);
    }

    const State& end = tr.states[m];
    if (!(end.S > 0)) {
        throw NumericalError("minimal_admissible_premium: S(T) is not positive");
    }
    const double flow = tr.params.gamma_I() * end.I + tr.params.gamma_H() * end.H;
    const double deaths = mode == DeathBenefitMode::Flow ? flow : end.D;
    const double limit = (ben.b_I * end.I + ben.b_H * end.H + ben.d * deaths) / end.S;
    return std::max(best, limit);
}

inline PricingReport price(const Trajectory& tr, const BenefitSchedule& ben, const std::vector<double>& multipliers,
                           DeathBenefitMode mode = DeathBenefitMode::Flow)
{
    PricingReport rep;
    rep.mode = mode;
    rep.horizon = tr.t_end() - tr.t0();
    rep.pi_zero_profit = zero_profit_premium(tr, ben, mode);
    rep.pi_star = minimal_admissible_premium(tr, ben, mode);
    rep.multipliers = multipliers;
    for (double c : multipliers) {
        rep.reserves.push_back(reserve_curve(tr, ben, c * rep.pi_star, mode));
    }
    return rep;
}

} // namespace sishd

#endif
