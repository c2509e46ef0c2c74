#ifndef SISHD_CHARTS_HPP
#define SISHD_CHARTS_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "sishd/actuarial.hpp"
#include "sishd/analysis.hpp"
#include "sishd/format.hpp"
#include "sishd/scenario.hpp"
#include "sishd/svg.hpp"

namespace sishd {

enum class ChartKind { Trajectory, Reserve, Sensitivity };

inline ChartKind parse_chart_kind(std::string_view s)
{
    if (s == "trajectory") {
        return ChartKind::Trajectory;
    }
    if (s == "reserve") {
        return ChartKind::Reserve;
    }
    if (s == "sensitivity") {
        return ChartKind::Sensitivity;
    }
    throw ValidationError("unknown chart kind '" + std::string(s) + "' (trajectory, reserve, sensitivity)");
}

inline svg::LineChart trajectory_chart(std::string_view title, const Trajectory& tr)
{
    svg::LineChart chart(std::string(title), "time t (days)", "individuals");
    svg::Series s{"S(t)", tr.times, {}, "#2a7ab0"};
    svg::Series i{"I(t)", tr.times, {}, "#d1495b"};
    svg::Series h{"H(t)", tr.times, {}, "#edae49"};
    for (const State& x : tr.states) {
        const State c = clamped(x);
        s.y.push_back(c.S);
        i.y.push_back(c.I);
        h.y.push_back(c.H);
    }
    chart.add(std::move(s));
    chart.add(std::move(i));
    chart.add(std::move(h));
    return chart;
}

inline svg::LineChart reserve_chart(std::string_view title, const PricingReport& pricing)
{
    if (pricing.reserves.empty()) {
        throw ValidationError("reserve chart: no reserve curves to draw");
    }
    static constexpr const char* palette[] = {"#d1495b", "#2a7ab0", "#00798c", "#edae49", "#66a182", "#8d96a3"};
    svg::LineChart chart(std::string(title), "time t (days)", "reserve V(t) (currency)");
    chart.set_zero_line(true);
    for (std::size_t k = 0; k < pricing.reserves.size(); ++k) {
        const auto& c = pricing.reserves[k];
        const std::string name = format_number(std::round(1e6 * 100.0 * pricing.multipliers[k]) / 1e6) + "% pi* (" +
                                 format_fixed(c.premium, 4) + ")";
        chart.add({name, c.times, c.values, palette[k % std::size(palette)]});
    }
    return chart;
}

inline svg::BarChart sensitivity_chart(std::string_view title, const SensitivityReport& sens)
{
    svg::BarChart chart(std::string(title), "parameter", "normalized sensitivity index of R0 (dimensionless)");
    for (Param p : all_params) {
        chart.add({std::string(param_name(p)), sens.at(p).normalized_index});
    }
    return chart;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw std::runtime_error(path.string() + ": cannot write");
    }
}

/// Builds the requested chart for one (scenario, initial) pair and writes it as SVG.
inline void emit_svg(const Scenario& sc, std::size_t initial, ChartKind kind, const std::filesystem::path& path)
{
    if (initial >= sc.initials.size()) {
        throw ValidationError("scenario " + sc.name + " has no initial condition #" + std::to_string(initial + 1));
    }
    const std::string pair = sc.name + "/" + sc.initials[initial].label;
    switch (kind) {
    case ChartKind::Sensitivity:
        write_text_file(path, sensitivity_chart("Sensitivity indices of R0, " + sc.name, sensitivity_indices(sc.params))
                                  .render());
        return;
    case ChartKind::Trajectory:
    case ChartKind::Reserve: {
        if (kind == ChartKind::Reserve && !sc.benefits) {
            throw ValidationError("reserve chart: scenario " + sc.name + " has no benefit schedule");
        }
        SimConfig cfg = sc.sim;
        cfg.initial = sc.initials[initial].state;
        const Trajectory tr = integrate(sc.params, cfg);
        if (kind == ChartKind::Trajectory) {
            write_text_file(path, trajectory_chart("Dynamics of S, I, H for " + pair, tr).render());
            return;
        }
        const std::vector<double> mult = sc.premium_multipliers.empty() ? std::vector<double>{1.0}
                                                                        : sc.premium_multipliers;
        const PricingReport rep = price(tr, *sc.benefits, mult, sc.death_mode);
        write_text_file(path, reserve_chart("Reserve level V(t) for " + pair, rep).render());
        return;
    }
    }
}

} // namespace sishd

#endif
