// Command-line front end: analysis, simulation, pricing, table reproduction and charts
// for scenario configuration files.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sishd/charts.hpp"
#include "sishd/csv.hpp"
#include "sishd/format.hpp"
#include "sishd/scenario.hpp"
#include "sishd/tables.hpp"

#ifndef SISHD_DATA_DIR
#define SISHD_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace sishd;

namespace {

enum ExitCode { Ok = 0, Invalid = 1, Numerical = 2, Deviation = 3 };

const std::string default_config = std::string(SISHD_DATA_DIR) + "/reference_sets.json";

struct GridOverrides {
    std::optional<double> step;
    std::optional<double> horizon;
    std::optional<double> interest;
};

void apply(std::vector<Scenario>& scenarios, const GridOverrides& o)
{
    for (auto& sc : scenarios) {
        if (o.step) {
            sc.sim.step = *o.step;
        }
        if (o.horizon) {
            sc.sim.t_end = sc.sim.t0 + *o.horizon;
        }
        if (o.interest) {
            sc.sim.force_of_interest = *o.interest;
        }
        validate(sc.sim);
    }
}

int batch_exit_code(const BatchResult& res)
{
    int code = Ok;
    for (const auto& r : res.rows) {
        if (r.error) {
            std::cerr << r.scenario << "/" << r.initial << ": " << *r.error << "\n";
            code = r.numerical_failure ? Numerical : std::max(code, static_cast<int>(Invalid));
        }
    }
    return code;
}

int run_analyze(const std::string& config, const std::string& csv_path)
{
    const auto scenarios = load_config(config);
    std::ostringstream csv;
    csv << "scenario,r0,r0_ngm,dfe_S,dfe_stability,dee_S,dee_I,dee_H,dee_stability,a1,a2,a3,"
           "gas_h1,gas_h2_offdiag,gas_h2_ghat,gas_A_abscissa,gas_seed";
    for (Param p : all_params) {
        csv << ",sens_" << param_name(p);
    }
    csv << "\n";
    for (const auto& sc : scenarios) {
        const AnalysisReport a = classify_stability(sc.params);
        const GasReport g = check_dfe_gas_conditions(sc.params, 1000);
        const SensitivityReport s = sensitivity_indices(sc.params);
        std::cout << sc.name << ": R0 = " << format_fixed(a.r0, 6) << ", DFE (" << format_fixed(a.dfe.S, 4)
                  << ", 0, 0) " << stability_name(a.dfe_stability);
        if (a.dee) {
            std::cout << "; DEE (" << format_fixed(a.dee->S, 4) << ", " << format_fixed(a.dee->I, 4) << ", "
                      << format_fixed(a.dee->H, 4) << ") " << stability_name(*a.dee_stability) << " [a1="
                      << format_number(a.routh->a1) << " a2=" << format_number(a.routh->a2)
                      << " a3=" << format_number(a.routh->a3) << "]";
        }
        else {
            std::cout << "; no endemic equilibrium";
        }
        std::cout << "; A abscissa " << format_number(g.a_spectral_abscissa) << "\n";

        auto opt = [](bool has, double v) { return has ? format_number(v) : std::string(); };
        const bool e = a.dee.has_value();
        csv << sc.name << ',' << format_number(a.r0) << ',' << format_number(r0_ngm_oracle(sc.params)) << ','
            << format_number(a.dfe.S) << ',' << stability_name(a.dfe_stability) << ',' << opt(e, e ? a.dee->S : 0)
            << ',' << opt(e, e ? a.dee->I : 0) << ',' << opt(e, e ? a.dee->H : 0) << ','
            << (e ? std::string(stability_name(*a.dee_stability)) : "") << ',' << opt(e, e ? a.routh->a1 : 0) << ','
            << opt(e, e ? a.routh->a2 : 0) << ',' << opt(e, e ? a.routh->a3 : 0) << ',' << g.h1 << ','
            << g.h2_offdiag << ',' << g.h2_ghat_nonneg << ',' << format_number(g.a_spectral_abscissa) << ','
            << g.seed;
        for (Param p : all_params) {
            csv << ',' << format_number(s.at(p).normalized_index);
        }
        csv << "\n";
    }
    if (!csv_path.empty()) {
        write_text_file(csv_path, csv.str());
    }
    return Ok;
}

int run_simulate(const std::string& config, const GridOverrides& o, const std::string& out_dir, std::size_t every,
                 unsigned threads)
{
    auto scenarios = load_config(config);
    apply(scenarios, o);
    BatchOptions opts;
    opts.threads = threads;
    if (!out_dir.empty()) {
        opts.sink = [&](const Scenario& sc, const PairResult& r, const Trajectory& tr, const PricingReport* p) {
            write_trajectory_csv(fs::path(out_dir) / trajectory_file_name(sc.name, r.initial), tr, p, every);
        };
    }
    const BatchResult res = run_batch(scenarios, opts);
    for (const auto& r : res.rows) {
        if (!r.trajectory) {
            continue;
        }
        const State& f = r.trajectory->final_state;
        std::cout << r.scenario << "/" << r.initial << ": final (S, I, H, D) = (" << format_fixed(f.S, 4) << ", "
                  << format_fixed(f.I, 4) << ", " << format_fixed(f.H, 4) << ", " << format_fixed(f.D, 4) << ")";
        if (r.pricing) {
            std::cout << ", pi = " << format_fixed(r.pricing->pi_zero_profit, 6)
                      << ", pi* = " << format_fixed(r.pricing->pi_star, 6);
        }
        std::cout << "\n";
    }
    if (!out_dir.empty()) {
        write_summary_csv(fs::path(out_dir) / "summary.csv", res);
    }
    return batch_exit_code(res);
}

int run_price(const std::string& config, const GridOverrides& o, const std::string& mode_name,
              const std::string& out_dir, std::size_t every, unsigned threads)
{
    auto scenarios = load_config(config);
    apply(scenarios, o);
    const DeathBenefitMode mode = parse_death_mode(mode_name);
    std::size_t priced = 0;
    for (auto& sc : scenarios) {
        sc.death_mode = mode;
        priced += sc.benefits ? 1 : 0;
    }
    if (priced == 0) {
        throw ValidationError(config + ": no scenario has a benefit schedule");
    }
    std::erase_if(scenarios, [](const Scenario& sc) { return !sc.benefits; });
    BatchOptions opts;
    opts.threads = threads;
    if (!out_dir.empty()) {
        opts.sink = [&](const Scenario& sc, const PairResult& r, const Trajectory& tr, const PricingReport* p) {
            write_trajectory_csv(fs::path(out_dir) / trajectory_file_name(sc.name, r.initial), tr, p, every);
        };
    }
    const BatchResult res = run_batch(scenarios, opts);
    std::cout << "death benefit: " << death_mode_name(mode) << "\n";
    for (const auto& r : res.rows) {
        if (!r.pricing) {
            continue;
        }
        std::cout << r.scenario << "/" << r.initial << ": pi = " << format_fixed(r.pricing->pi_zero_profit, 6)
                  << ", pi* = " << format_fixed(r.pricing->pi_star, 6);
        for (std::size_t k = 0; k < r.pricing->multipliers.size(); ++k) {
            std::cout << ", min V(" << format_number(r.pricing->multipliers[k])
                      << " pi*) = " << format_number(r.pricing->reserve_min[k]);
        }
        std::cout << "\n";
    }
    if (!out_dir.empty()) {
        write_summary_csv(fs::path(out_dir) / "summary.csv", res);
    }
    return batch_exit_code(res);
}

int run_tables(const std::string& which, const std::string& config, const std::string& mode_name,
               const std::string& out_dir)
{
    const PublishedTable table = parse_table(which);
    const auto scenarios = load_config(config);
    const TableReport rep = reproduce_tables(table, scenarios, parse_death_mode(mode_name));
    std::cout << format_table_text(rep);
    write_text_file(fs::path(out_dir) / ("table_" + std::string(table_name(table)) + ".csv"),
                    format_table_csv(rep));
    return rep.all_pass() ? Ok : Deviation;
}

int run_chart(const std::string& kind, std::string scenario, const std::string& out, const std::string& config,
              std::string initial, const GridOverrides& o)
{
    const ChartKind k = parse_chart_kind(kind);
    if (const auto slash = scenario.find('/'); slash != std::string::npos) {
        initial = scenario.substr(slash + 1);
        scenario = scenario.substr(0, slash);
    }
    auto scenarios = load_config(config);
    apply(scenarios, o);
    const Scenario& sc = find_scenario(scenarios, scenario);
    std::size_t index = 0;
    if (!initial.empty()) {
        const auto it = std::find_if(sc.initials.begin(), sc.initials.end(),
                                     [&](const InitialCondition& ic) { return ic.label == initial; });
        if (it == sc.initials.end()) {
            throw ValidationError("scenario " + sc.name + " has no initial condition '" + initial + "'");
        }
        index = static_cast<std::size_t>(it - sc.initials.begin());
    }
    emit_svg(sc, index, k, out);
    std::cout << "wrote " << out << "\n";
    return Ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"SISHD epidemic model: analysis, simulation and insurance pricing"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    std::string config;
    std::string out_dir;
    std::string csv_path;
    std::string mode = "flow";
    std::string which;
    std::string kind, scenario, svg_out, initial;
    std::size_t every = 1;
    unsigned threads = 0;
    GridOverrides grid;
    double step = 0, horizon = 0, interest = 0;

    auto* analyze = app.add_subcommand("analyze", "R0, equilibria, stability and sensitivity per scenario");
    analyze->add_option("config", config, "scenario configuration (JSON)")->required()->check(CLI::ExistingFile);
    analyze->add_option("--csv", csv_path, "also write the analysis as CSV");

    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--step", step, "RK4 step size in days (overrides config)")->check(CLI::PositiveNumber);
        cmd->add_option("--horizon", horizon, "integration horizon T in days (overrides config)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--out-dir", out_dir, "write per-pair trajectory CSVs and summary.csv here");
        cmd->add_option("--every", every, "write every k-th grid row (the last row is always written)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
    };

    auto* simulate = app.add_subcommand("simulate", "integrate every (scenario, initial) pair with RK4");
    simulate->add_option("config", config, "scenario configuration (JSON)")->required()->check(CLI::ExistingFile);
    add_grid(simulate);

    auto* pricecmd = app.add_subcommand("price", "zero-profit premium, minimal admissible premium and reserves");
    pricecmd->add_option("config", config, "scenario configuration (JSON)")->required()->check(CLI::ExistingFile);
    add_grid(pricecmd);
    pricecmd->add_option("--death-benefit-mode", mode, "flow: d per death in the period; stock: d times integral of D")
        ->check(CLI::IsMember({"flow", "stock"}));
    pricecmd->add_option("--interest", interest, "constant force of interest (default 0)")
        ->check(CLI::NonNegativeNumber);

    auto* tables = app.add_subcommand("tables", "recompute a published table and report per-cell deviations");
    tables->add_option("table", which, "T1, T3 or T5")->required()->check(CLI::IsMember({"T1", "T3", "T5"}));
    tables->add_option("--config", config, "scenario configuration")->check(CLI::ExistingFile);
    tables->add_option("--out-dir", out_dir, "directory for table_<T>.csv (default: current directory)");
    tables->add_option("--death-benefit-mode", mode, "death benefit interpretation for T5")
        ->check(CLI::IsMember({"flow", "stock"}));

    auto* chart = app.add_subcommand("chart", "write an SVG chart");
    chart->add_option("kind", kind, "trajectory, reserve or sensitivity")
        ->required()
        ->check(CLI::IsMember({"trajectory", "reserve", "sensitivity"}));
    chart->add_option("scenario", scenario, "scenario name, optionally NAME/INITIAL")->required();
    chart->add_option("out", svg_out, "output SVG path")->required();
    chart->add_option("--config", config, "scenario configuration")->check(CLI::ExistingFile);
    chart->add_option("--initial", initial, "initial condition label (default: first)");
    chart->add_option("--step", step, "RK4 step size in days")->check(CLI::PositiveNumber);
    chart->add_option("--horizon", horizon, "horizon in days")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Ok : Invalid;
    }

    auto collect = [&](CLI::App* cmd) {
        if (cmd->count("--step")) {
            grid.step = step;
        }
        if (cmd->count("--horizon")) {
            grid.horizon = horizon;
        }
        if (cmd->get_option_no_throw("--interest") && cmd->count("--interest")) {
            grid.interest = interest;
        }
    };

    try {
        if (*analyze) {
            return run_analyze(config, csv_path);
        }
        if (*simulate) {
            collect(simulate);
            return run_simulate(config, grid, out_dir, every, threads);
        }
        if (*pricecmd) {
            collect(pricecmd);
            return run_price(config, grid, mode, out_dir, every, threads);
        }
        if (*tables) {
            return run_tables(which, config.empty() ? default_config : config, mode, out_dir.empty() ? "." : out_dir);
        }
        if (*chart) {
            collect(chart);
            return run_chart(kind, scenario, svg_out, config.empty() ? default_config : config, initial, grid);
        }
    }
    catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Invalid;
    }
    catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return Numerical;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Invalid;
    }
    return Ok;
}
