#ifndef SISHD_MODEL_HPP
#define SISHD_MODEL_HPP

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

#include "sishd/errors.hpp"

namespace sishd {

/// The nine rate constants of the SISHD system, in declaration order.
enum class Param { Lambda, mu, beta, epsilon, alpha_I, gamma_I, delta, gamma_H, alpha_H };

inline constexpr std::array<Param, 9> all_params = {
    Param::Lambda, Param::mu,      Param::beta,    Param::epsilon, Param::alpha_I,
    Param::gamma_I, Param::delta, Param::gamma_H, Param::alpha_H};

constexpr std::string_view param_name(Param p)
{
    switch (p) {
    case Param::Lambda: return "Lambda";
    case Param::mu: return "mu";
    case Param::beta: return "beta";
    case Param::epsilon: return "epsilon";
    case Param::alpha_I: return "alpha_I";
    case Param::gamma_I: return "gamma_I";
    case Param::delta: return "delta";
    case Param::gamma_H: return "gamma_H";
    case Param::alpha_H: return "alpha_H";
    }
    return "?";
}

/// Plain aggregate of rate constants; unchecked. Use ModelParams for validated values.
struct Rates {
    double Lambda  = 0; ///< recruitment, individuals/day
    double mu      = 0; ///< natural death rate, 1/day
    double beta    = 0; ///< transmission rate, 1/(individual day)
    double epsilon = 0; ///< relative infectiousness of H, in [0, 1]
    double alpha_I = 0; ///< recovery from I, 1/day
    double gamma_I = 0; ///< disease death rate in I, 1/day
    double delta   = 0; ///< hospitalization rate, 1/day
    double gamma_H = 0; ///< disease death rate in H, 1/day
    double alpha_H = 0; ///< discharge rate from H, 1/day

private:
    template <class Self>
    static std::conditional_t<std::is_const_v<Self>, const double&, double&> field(Self& self, Param p)
    {
        switch (p) {
        case Param::Lambda: return self.Lambda;
        case Param::mu: return self.mu;
        case Param::beta: return self.beta;
        case Param::epsilon: return self.epsilon;
        case Param::alpha_I: return self.alpha_I;
        case Param::gamma_I: return self.gamma_I;
        case Param::delta: return self.delta;
        case Param::gamma_H: return self.gamma_H;
        case Param::alpha_H: return self.alpha_H;
        }
        return self.Lambda;
    }

public:
    double& operator[](Param p) { return field(*this, p); }
    double operator[](Param p) const { return field(*this, p); }

    bool operator==(const Rates&) const = default;
};

/// Validated SISHD parameters. Every rate is finite and strictly positive and
/// epsilon lies in [0, 1]; construction throws ValidationError otherwise.
class ModelParams {
public:
    explicit ModelParams(const Rates& r) : r_(r)
    {
        for (Param p : all_params) {
            const double v = r_[p];
            if (!std::isfinite(v)) {
                throw ValidationError(std::string(param_name(p)) + ": must be finite");
            }
            if (p == Param::epsilon) {
                if (v < 0.0 || v > 1.0) {
                    throw ValidationError("epsilon: must lie in [0, 1], got " + std::to_string(v));
                }
            }
            else if (!(v > 0.0)) {
                throw ValidationError(std::string(param_name(p)) + ": must be strictly positive, got " +
                                      std::to_string(v));
            }
        }
    }

    const Rates& rates() const { return r_; }
    double operator[](Param p) const { return r_[p]; }

    /// Copy with one rate replaced (revalidated).
    ModelParams with(Param p, double value) const
    {
        Rates r = r_;
        r[p] = value;
        return ModelParams(r);
    }

    double Lambda() const { return r_.Lambda; }
    double mu() const { return r_.mu; }
    double beta() const { return r_.beta; }
    double epsilon() const { return r_.epsilon; }
    double alpha_I() const { return r_.alpha_I; }
    double gamma_I() const { return r_.gamma_I; }
    double delta() const { return r_.delta; }
    double gamma_H() const { return r_.gamma_H; }
    double alpha_H() const { return r_.alpha_H; }

    /// Total exit rate from I: alpha_I + gamma_I + mu + delta.
    double exit_I() const { return r_.alpha_I + r_.gamma_I + r_.mu + r_.delta; }
    /// Total exit rate from H: gamma_H + mu + alpha_H.
    double exit_H() const { return r_.gamma_H + r_.mu + r_.alpha_H; }
    /// Carrying level Lambda / mu of the living population.
    double carrying_level() const { return r_.Lambda / r_.mu; }

    bool operator==(const ModelParams&) const = default;

private:
    Rates r_;
};

/// One point (S, I, H, D) of the system, in individuals.
struct State {
    double S = 0;
    double I = 0;
    double H = 0;
    double D = 0;

    bool operator==(const State&) const = default;
};

struct StateDerivative {
    double dS = 0;
    double dI = 0;
    double dH = 0;
    double dD = 0;
};

inline bool is_finite(const State& x)
{
    return std::isfinite(x.S) && std::isfinite(x.I) && std::isfinite(x.H) && std::isfinite(x.D);
}

inline void require_valid_state(const State& x)
{
    if (!is_finite(x)) {
        throw ValidationError("state has non-finite components");
    }
    if (x.S < 0 || x.I < 0 || x.H < 0 || x.D < 0) {
        throw ValidationError("state has negative components");
    }
}

namespace detail {

// Unchecked right-hand side; integrator stages may probe slightly negative states.
inline StateDerivative rhs(const ModelParams& p, double S, double I, double H)
{
    const double force = p.beta() * (I + p.epsilon() * H) * S;
    return {p.Lambda() - force + p.alpha_I() * I - p.mu() * S + p.alpha_H() * H,
            force - p.exit_I() * I,
            p.delta() * I - p.exit_H() * H,
            p.gamma_I() * I + p.gamma_H() * H};
}

} // namespace detail

/// Evaluates the SISHD vector field at a nonnegative, finite state.
inline StateDerivative vector_field(const ModelParams& p, const State& x)
{
    require_valid_state(x);
    return detail::rhs(p, x.S, x.I, x.H);
}

/// Living population S + I + H; the dead compartment is excluded.
constexpr double total_living(const State& x) { return x.S + x.I + x.H; }

/// The positively invariant simplex {S, I, H >= 0, S + I + H <= Lambda/mu}.
class FeasibleRegion {
public:
    explicit FeasibleRegion(const ModelParams& p) : bound_(p.carrying_level()) {}

    double bound() const { return bound_; }

    bool contains(const State& x, double tol = 0.0) const
    {
        return x.S >= -tol && x.I >= -tol && x.H >= -tol && total_living(x) <= bound_ + tol;
    }

private:
    double bound_;
};

inline bool in_feasible_region(const ModelParams& p, const State& x, double tol)
{
    if (!(tol >= 0.0)) {
        throw ValidationError("tolerance must be nonnegative");
    }
    return FeasibleRegion(p).contains(x, tol);
}

} // namespace sishd

#endif
