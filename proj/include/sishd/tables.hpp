#ifndef SISHD_TABLES_HPP
#define SISHD_TABLES_HPP

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sishd/analysis.hpp"
#include "sishd/format.hpp"
#include "sishd/published.hpp"
#include "sishd/scenario.hpp"

namespace sishd {

enum class PublishedTable { T1, T3, T5 };

inline PublishedTable parse_table(std::string_view s)
{
    if (s == "T1") {
        return PublishedTable::T1;
    }
    if (s == "T3") {
        return PublishedTable::T3;
    }
    if (s == "T5") {
        return PublishedTable::T5;
    }
    throw ValidationError("table must be one of T1, T3, T5; got '" + std::string(s) + "'");
}

constexpr std::string_view table_name(PublishedTable t)
{
    switch (t) {
    case PublishedTable::T1: return "T1";
    case PublishedTable::T3: return "T3";
    case PublishedTable::T5: return "T5";
    }
    return "?";
}

struct TableCell {
    std::string row;
    std::string quantity;
    double computed = 0;
    double published = 0;
    double deviation = 0; ///< absolute or relative, per `relative`
    double tolerance = 0;
    bool relative = true;
    bool pass = false;
};

struct TableReport {
    PublishedTable table = PublishedTable::T1;
    std::vector<TableCell> cells;

    bool all_pass() const
    {
        for (const auto& c : cells) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }
    double max_deviation() const
    {
        double m = 0;
        for (const auto& c : cells) {
            m = std::max(m, c.deviation);
        }
        return m;
    }
};

namespace detail {

inline TableCell make_cell(std::string row, std::string quantity, double computed, double published, double tol,
                           bool relative)
{
    const double dev = relative ? std::abs(computed / published - 1.0) : std::abs(computed - published);
    return {std::move(row), std::move(quantity), computed, published, dev, tol, relative, dev <= tol};
}

} // namespace detail

/// Recomputes a published table from the given scenarios (looked up by the set names A1..B5
/// and initial labels IC1..IC5) and records the deviation of every cell.
inline TableReport reproduce_tables(PublishedTable which, const std::vector<Scenario>& scenarios,
                                    DeathBenefitMode mode = DeathBenefitMode::Flow)
{
    TableReport rep;
    rep.table = which;
    switch (which) {
    case PublishedTable::T1:
        for (const auto& row : published::table_A) {
            const Scenario& sc = find_scenario(scenarios, std::string(row.name));
            rep.cells.push_back(detail::make_cell(sc.name, "R0", compute_r0(sc.params), row.r0,
                                                  published::tol_r0_A_abs, false));
        }
        break;
    case PublishedTable::T3:
        for (const auto& row : published::table_B) {
            const Scenario& sc = find_scenario(scenarios, std::string(row.name));
            const auto dee = disease_endemic_equilibrium(sc.params);
            rep.cells.push_back(detail::make_cell(sc.name, "R0", compute_r0(sc.params), row.r0,
                                                  published::tol_r0_B_rel, true));
            const double nan = std::nan("");
            rep.cells.push_back(detail::make_cell(sc.name, "S*", dee ? dee->S : nan, row.S,
                                                  published::tol_equilibrium_rel, true));
            rep.cells.push_back(detail::make_cell(sc.name, "I*", dee ? dee->I : nan, row.I,
                                                  published::tol_equilibrium_rel, true));
            rep.cells.push_back(detail::make_cell(sc.name, "H*", dee ? dee->H : nan, row.H,
                                                  published::tol_equilibrium_rel, true));
        }
        break;
    case PublishedTable::T5: {
        std::vector<Scenario> batch;
        for (const auto& row : published::table_B) {
            Scenario sc = find_scenario(scenarios, std::string(row.name));
            sc.benefits = BenefitSchedule{published::b_I, published::b_H, published::d};
            sc.premium_multipliers.clear();
            sc.death_mode = mode;
            batch.push_back(std::move(sc));
        }
        const BatchResult res = run_batch(batch);
        for (std::size_t b = 0; b < published::table_B.size(); ++b) {
            for (std::size_t k = 0; k < published::initials.size(); ++k) {
                const std::string set(published::table_B[b].name);
                const std::string ic(published::initials[k].label);
                const PairResult& r = res.row(set, ic);
                const double pi = r.pricing ? r.pricing->pi_zero_profit : std::nan("");
                rep.cells.push_back(detail::make_cell(set + "/" + ic, "pi", pi, published::premium[b][k],
                                                      published::tol_premium_rel, true));
            }
        }
        break;
    }
    }
    return rep;
}

inline std::string format_table_text(const TableReport& rep)
{
    std::ostringstream os;
    os << "Table " << table_name(rep.table) << "\n";
    os << std::left << std::setw(10) << "row" << std::setw(6) << "qty" << std::right << std::setw(14) << "computed"
       << std::setw(14) << "published" << std::setw(13) << "deviation" << std::setw(11) << "tolerance"
       << "  status\n";
    for (const auto& c : rep.cells) {
        os << std::left << std::setw(10) << c.row << std::setw(6) << c.quantity << std::right << std::setw(14)
           << format_fixed(c.computed, 6) << std::setw(14) << format_fixed(c.published, 5) << std::setw(13)
           << (format_fixed(c.relative ? 100.0 * c.deviation : c.deviation, c.relative ? 4 : 6) +
               (c.relative ? "%" : ""))
           << std::setw(11)
           << (c.relative ? format_fixed(100.0 * c.tolerance, 2) + "%" : format_fixed(c.tolerance, 4))
           << "  " << (c.pass ? "ok" : "DEVIATES") << "\n";
    }
    return os.str();
}

inline std::string format_table_csv(const TableReport& rep)
{
    std::ostringstream os;
    os << "table,row,quantity,computed,published,deviation,deviation_kind,tolerance,pass\n";
    for (const auto& c : rep.cells) {
        os << table_name(rep.table) << ',' << c.row << ',' << c.quantity << ',' << format_number(c.computed) << ','
           << format_number(c.published) << ',' << format_number(c.deviation) << ','
           << (c.relative ? "relative" : "absolute") << ',' << format_number(c.tolerance) << ','
           << (c.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

} // namespace sishd

#endif
