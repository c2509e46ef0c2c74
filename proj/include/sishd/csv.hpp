#ifndef SISHD_CSV_HPP
#define SISHD_CSV_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "sishd/actuarial.hpp"
#include "sishd/format.hpp"
#include "sishd/scenario.hpp"

namespace sishd {

inline constexpr std::string_view trajectory_header = "t,S,I,H,D,cumS,cumI,cumH,cumDeaths";

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& path)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(path.string() + ": cannot open for writing");
    }
    return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& path)
{
    out.flush();
    if (!out) {
        throw std::runtime_error(path.string() + ": write failed");
    }
}

} // namespace detail

/// File name for a (scenario, initial) pair, restricted to [A-Za-z0-9._-].
inline std::string trajectory_file_name(std::string_view scenario, std::string_view initial)
{
    std::string s = std::string(scenario) + "_" + std::string(initial) + ".csv";
    for (char& c : s) {
        const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' ||
                        c == '_' || c == '-';
        if (!ok) {
            c = '_';
        }
    }
    return s;
}

/// Writes one row per grid point (every `every`-th point plus the last when thinned).
/// Priced trajectories get one V_<multiplier> column per reserve curve.
inline void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& tr,
                                 const PricingReport* pricing = nullptr, std::size_t every = 1)
{
    if (every == 0) {
        throw ValidationError("row stride must be positive");
    }
    auto out = detail::open_for_write(path);
    out << trajectory_header;
    if (pricing) {
        for (double m : pricing->multipliers) {
            out << ",V_" << format_number(m);
        }
    }
    out << '\n';
    const std::size_t m = tr.size() - 1;
    for (std::size_t k = 0; k <= m; ++k) {
        if (k % every != 0 && k != m) {
            continue;
        }
        const State x = clamped(tr.states[k]);
        out << format_number(tr.times[k]) << ',' << format_number(x.S) << ',' << format_number(x.I) << ','
            << format_number(x.H) << ',' << format_number(x.D) << ',' << format_number(tr.cum_S[k]) << ','
            << format_number(tr.cum_I[k]) << ',' << format_number(tr.cum_H[k]) << ','
            << format_number(tr.cum_deaths[k]);
        if (pricing) {
            for (const auto& curve : pricing->reserves) {
                out << ',' << format_number(curve.values[k]);
            }
        }
        out << '\n';
    }
    detail::finish(out, path);
}

inline constexpr std::string_view summary_header =
    "scenario,initial,r0,dfe_S,dfe_stability,dee_S,dee_I,dee_H,dee_stability,a1,a2,a3,"
    "final_S,final_I,final_H,final_D,pi,pi_star,death_mode,status";

/// One row per (scenario, initial) with analysis, final state and premiums, followed by a
/// provenance comment line.
inline void write_summary_csv(const std::filesystem::path& path, const BatchResult& res)
{
    auto out = detail::open_for_write(path);
    out << summary_header << '\n';
    auto opt = [](bool has, double v) { return has ? format_number(v) : std::string(); };
    for (const auto& r : res.rows) {
        const auto& a = r.analysis;
        out << r.scenario << ',' << r.initial << ',' << format_number(a.r0) << ',' << format_number(a.dfe.S) << ','
            << stability_name(a.dfe_stability) << ',' << opt(a.dee.has_value(), a.dee ? a.dee->S : 0) << ','
            << opt(a.dee.has_value(), a.dee ? a.dee->I : 0) << ',' << opt(a.dee.has_value(), a.dee ? a.dee->H : 0)
            << ',' << (a.dee_stability ? std::string(stability_name(*a.dee_stability)) : std::string()) << ','
            << opt(a.routh.has_value(), a.routh ? a.routh->a1 : 0) << ','
            << opt(a.routh.has_value(), a.routh ? a.routh->a2 : 0) << ','
            << opt(a.routh.has_value(), a.routh ? a.routh->a3 : 0) << ',';
        const bool t = r.trajectory.has_value();
        const State f = t ? r.trajectory->final_state : State{};
        out << opt(t, f.S) << ',' << opt(t, f.I) << ',' << opt(t, f.H) << ',' << opt(t, f.D) << ',';
        const bool p = r.pricing.has_value();
        out << opt(p, p ? r.pricing->pi_zero_profit : 0) << ',' << opt(p, p ? r.pricing->pi_star : 0) << ','
            << (p ? std::string(death_mode_name(r.pricing->mode)) : std::string()) << ',';
        if (r.error) {
            std::string msg = *r.error;
            for (char& c : msg) {
                if (c == ',' || c == '\n' || c == '"') {
                    c = ';';
                }
            }
            out << (r.numerical_failure ? "numerical-error: " : "error: ") << msg;
        }
        else {
            out << "ok";
        }
        out << '\n';
    }
    out << "# config_hash=" << std::hex << res.provenance.config_hash << std::dec
        << " step=" << res.provenance.step_sizes << " version=" << res.provenance.version << '\n';
    detail::finish(out, path);
}

} // namespace sishd

#endif
