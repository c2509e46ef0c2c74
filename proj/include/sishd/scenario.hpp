#ifndef SISHD_SCENARIO_HPP
#define SISHD_SCENARIO_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sishd/actuarial.hpp"
#include "sishd/analysis.hpp"
#include "sishd/format.hpp"
#include "sishd/simulate.hpp"

namespace sishd {

inline constexpr const char* tool_version = "1.0.0";

struct InitialCondition {
    std::string label;
    State state;

    bool operator==(const InitialCondition&) const = default;
};

/// One parameter set with its initial data, grid and optional pricing inputs.
struct Scenario {
    std::string name;
    ModelParams params;
    std::vector<InitialCondition> initials;
    SimConfig sim; ///< sim.initial is replaced by each entry of initials
    std::optional<BenefitSchedule> benefits;
    std::vector<double> premium_multipliers;
    DeathBenefitMode death_mode = DeathBenefitMode::Flow;

    bool operator==(const Scenario&) const = default;
};

// ---------------------------------------------------------------------------
// JSON mapping

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where)
{
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
            throw ValidationError(where + "." + key + ": unknown field");
        }
    }
}

inline const json& require_object(const json& j, const std::string& where)
{
    if (!j.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    return j;
}

inline double number_field(const json& obj, const char* key, const std::string& where,
                           std::optional<double> fallback = std::nullopt)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        if (fallback) {
            return *fallback;
        }
        throw ValidationError(where + "." + key + ": missing");
    }
    if (!it->is_number()) {
        throw ValidationError(where + "." + key + ": expected a number");
    }
    return it->get<double>();
}

inline ModelParams params_from_json(const json& j, const std::string& where)
{
    require_object(j, where);
    reject_unknown(j, {"Lambda", "mu", "beta", "epsilon", "alpha_I", "gamma_I", "delta", "gamma_H", "alpha_H"},
                   where);
    Rates r;
    for (Param p : all_params) {
        r[p] = number_field(j, std::string(param_name(p)).c_str(), where);
    }
    try {
        return ModelParams(r);
    }
    catch (const ValidationError& e) {
        throw ValidationError(where + "." + e.what());
    }
}

inline json params_to_json(const ModelParams& p)
{
    json j = json::object();
    for (Param q : all_params) {
        j[std::string(param_name(q))] = p[q];
    }
    return j;
}

inline InitialCondition initial_from_json(const json& j, std::size_t index, const std::string& where)
{
    require_object(j, where);
    reject_unknown(j, {"label", "S", "I", "H", "D"}, where);
    InitialCondition ic;
    ic.label = j.contains("label") ? j.at("label").get<std::string>() : "IC" + std::to_string(index + 1);
    ic.state = {number_field(j, "S", where), number_field(j, "I", where), number_field(j, "H", where),
                number_field(j, "D", where, 0.0)};
    try {
        require_valid_state(ic.state);
    }
    catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
    return ic;
}

} // namespace detail

inline nlohmann::json to_json(const Scenario& s)
{
    using nlohmann::json;
    json j;
    j["name"] = s.name;
    j["params"] = detail::params_to_json(s.params);
    json ics = json::array();
    for (const auto& ic : s.initials) {
        ics.push_back({{"label", ic.label}, {"S", ic.state.S}, {"I", ic.state.I}, {"H", ic.state.H}, {"D", ic.state.D}});
    }
    j["initials"] = ics;
    j["sim"] = {{"t0", s.sim.t0},
                {"t_end", s.sim.t_end},
                {"step", s.sim.step},
                {"force_of_interest", s.sim.force_of_interest}};
    if (s.benefits) {
        j["benefits"] = {{"b_I", s.benefits->b_I}, {"b_H", s.benefits->b_H}, {"d", s.benefits->d}};
    }
    if (!s.premium_multipliers.empty()) {
        j["premium_multipliers"] = s.premium_multipliers;
    }
    j["death_benefit_mode"] = std::string(death_mode_name(s.death_mode));
    return j;
}

inline nlohmann::json to_json(const std::vector<Scenario>& scenarios)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : scenarios) {
        arr.push_back(to_json(s));
    }
    return {{"scenarios", arr}};
}

inline Scenario scenario_from_json(const nlohmann::json& j, const std::string& where)
{
    using detail::number_field;
    detail::require_object(j, where);
    detail::reject_unknown(
        j, {"name", "params", "initials", "sim", "benefits", "premium_multipliers", "death_benefit_mode"}, where);

    if (!j.contains("name") || !j.at("name").is_string() || j.at("name").get<std::string>().empty()) {
        throw ValidationError(where + ".name: missing or not a non-empty string");
    }
    const std::string name = j.at("name").get<std::string>();
    const std::string at = where + "(" + name + ")";
    if (!j.contains("params")) {
        throw ValidationError(at + ".params: missing");
    }
    Scenario s{name, detail::params_from_json(j.at("params"), at + ".params"), {}, {}, {}, {}, {}};

    if (!j.contains("initials") || !j.at("initials").is_array() || j.at("initials").empty()) {
        throw ValidationError(at + ".initials: must be a non-empty array");
    }
    const auto& ics = j.at("initials");
    for (std::size_t k = 0; k < ics.size(); ++k) {
        s.initials.push_back(detail::initial_from_json(ics[k], k, at + ".initials[" + std::to_string(k) + "]"));
    }

    if (j.contains("sim")) {
        const auto& sim = detail::require_object(j.at("sim"), at + ".sim");
        detail::reject_unknown(sim, {"t0", "t_end", "step", "force_of_interest"}, at + ".sim");
        s.sim.t0 = number_field(sim, "t0", at + ".sim", 0.0);
        s.sim.t_end = number_field(sim, "t_end", at + ".sim", 365.0);
        s.sim.step = number_field(sim, "step", at + ".sim", default_step);
        s.sim.force_of_interest = number_field(sim, "force_of_interest", at + ".sim", 0.0);
    }
    s.sim.initial = s.initials.front().state;
    try {
        validate(s.sim);
    }
    catch (const ValidationError& e) {
        throw ValidationError(at + "." + e.what());
    }

    if (j.contains("benefits")) {
        const auto& b = detail::require_object(j.at("benefits"), at + ".benefits");
        detail::reject_unknown(b, {"b_I", "b_H", "d"}, at + ".benefits");
        s.benefits = BenefitSchedule{number_field(b, "b_I", at + ".benefits"), number_field(b, "b_H", at + ".benefits"),
                                     number_field(b, "d", at + ".benefits")};
        try {
            validate(*s.benefits);
        }
        catch (const ValidationError& e) {
            throw ValidationError(at + "." + e.what());
        }
    }
    if (j.contains("premium_multipliers")) {
        const auto& pm = j.at("premium_multipliers");
        if (!pm.is_array()) {
            throw ValidationError(at + ".premium_multipliers: expected an array");
        }
        for (const auto& v : pm) {
            if (!v.is_number() || !(v.get<double>() >= 0)) {
                throw ValidationError(at + ".premium_multipliers: entries must be nonnegative numbers");
            }
            s.premium_multipliers.push_back(v.get<double>());
        }
    }
    if (j.contains("death_benefit_mode")) {
        s.death_mode = parse_death_mode(j.at("death_benefit_mode").get<std::string>());
    }
    return s;
}

/// Parses and validates a scenario list from JSON text.
inline std::vector<Scenario> parse_config(const std::string& text, const std::string& source = "<config>")
{
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(source + ": parse error: " + e.what());
    }
    if (!root.is_object() || !root.contains("scenarios") || !root.at("scenarios").is_array()) {
        throw ValidationError(source + ": expected an object with a 'scenarios' array");
    }
    const auto& arr = root.at("scenarios");
    if (arr.empty()) {
        throw ValidationError(source + ": no scenarios");
    }
    std::vector<Scenario> out;
    std::set<std::string> names;
    try {
        for (std::size_t k = 0; k < arr.size(); ++k) {
            out.push_back(scenario_from_json(arr[k], "scenarios[" + std::to_string(k) + "]"));
            if (!names.insert(out.back().name).second) {
                throw ValidationError("scenarios[" + std::to_string(k) + "].name: duplicate '" + out.back().name + "'");
            }
        }
    }
    catch (const nlohmann::json::exception& e) {
        throw ValidationError(source + ": " + e.what());
    }
    catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
    return out;
}

inline std::vector<Scenario> load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError(path.string() + ": cannot open config");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

/// FNV-1a over the canonical JSON serialization of the batch.
inline std::uint64_t config_hash(const std::vector<Scenario>& scenarios)
{
    const std::string text = to_json(scenarios).dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline const Scenario& find_scenario(const std::vector<Scenario>& scenarios, const std::string& name)
{
    const auto it = std::find_if(scenarios.begin(), scenarios.end(), [&](const Scenario& s) { return s.name == name; });
    if (it == scenarios.end()) {
        throw ValidationError("unknown scenario '" + name + "'");
    }
    return *it;
}

// ---------------------------------------------------------------------------
// Batch execution

struct TrajectorySummary {
    State final_state;
    double min_component = 0; ///< smallest S, I, H or D value along the path
    double max_living = 0;    ///< largest S + I + H along the path
    std::size_t grid_points = 0;
};

struct PricingSummary {
    double pi_zero_profit = 0;
    double pi_star = 0;
    DeathBenefitMode mode = DeathBenefitMode::Flow;
    std::vector<double> multipliers;
    std::vector<double> reserve_min;
};

struct PairResult {
    std::string scenario;
    std::string initial;
    std::size_t initial_index = 0;
    AnalysisReport analysis;
    std::optional<TrajectorySummary> trajectory;
    std::optional<PricingSummary> pricing;
    std::optional<std::string> error;
    bool numerical_failure = false;
};

struct Provenance {
    std::uint64_t config_hash = 0;
    std::string step_sizes;
    std::string version = tool_version;
};

struct BatchResult {
    std::vector<PairResult> rows; ///< ordered by scenario, then initial index
    Provenance provenance;

    std::size_t failures() const
    {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.error.has_value(); }));
    }
    const PairResult& row(const std::string& scenario, const std::string& initial) const
    {
        for (const auto& r : rows) {
            if (r.scenario == scenario && r.initial == initial) {
                return r;
            }
        }
        throw ValidationError("no result for " + scenario + "/" + initial);
    }
};

/// Called once per finished pair with the full trajectory; may run on worker threads.
using TrajectorySink =
    std::function<void(const Scenario&, const PairResult&, const Trajectory&, const PricingReport*)>;

struct BatchOptions {
    unsigned threads = 0; ///< 0 selects hardware concurrency
    TrajectorySink sink;
};

inline TrajectorySummary summarize(const Trajectory& tr)
{
    TrajectorySummary s;
    s.final_state = clamped(tr.states.back());
    s.grid_points = tr.size();
    s.min_component = INFINITY;
    s.max_living = -INFINITY;
    for (const State& x : tr.states) {
        s.min_component = std::min({s.min_component, x.S, x.I, x.H, x.D});
        s.max_living = std::max(s.max_living, total_living(x));
    }
    return s;
}

/// Analysis, integration and (when benefits are present) pricing of one initial condition.
inline PairResult run_pair(const Scenario& sc, std::size_t index, const TrajectorySink& sink = {})
{
    PairResult r;
    r.scenario = sc.name;
    r.initial = sc.initials.at(index).label;
    r.initial_index = index;
    try {
        r.analysis = classify_stability(sc.params);
        SimConfig cfg = sc.sim;
        cfg.initial = sc.initials[index].state;
        const Trajectory tr = integrate(sc.params, cfg);
        r.trajectory = summarize(tr);
        std::optional<PricingReport> pricing;
        if (sc.benefits) {
            pricing = price(tr, *sc.benefits, sc.premium_multipliers, sc.death_mode);
            PricingSummary ps{pricing->pi_zero_profit, pricing->pi_star, sc.death_mode, sc.premium_multipliers, {}};
            for (const auto& c : pricing->reserves) {
                ps.reserve_min.push_back(c.min());
            }
            r.pricing = ps;
        }
        if (sink) {
            sink(sc, r, tr, pricing ? &*pricing : nullptr);
        }
    }
    catch (const NumericalError& e) {
        r.error = e.what();
        r.numerical_failure = true;
    }
    catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

/// Runs every (scenario, initial) pair. Failures are recorded per row and do not abort the
/// batch. Rows are ordered by scenario name, then initial index, regardless of scheduling.
inline BatchResult run_batch(const std::vector<Scenario>& scenarios, const BatchOptions& opts = {})
{
    struct Job {
        const Scenario* sc;
        std::size_t index;
    };
    std::vector<Job> jobs;
    for (const auto& sc : scenarios) {
        for (std::size_t k = 0; k < sc.initials.size(); ++k) {
            jobs.push_back({&sc, k});
        }
    }
    std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        return a.sc->name != b.sc->name ? a.sc->name < b.sc->name : a.index < b.index;
    });

    BatchResult out;
    out.rows.resize(jobs.size());
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            out.rows[k] = run_pair(*jobs[k].sc, jobs[k].index, opts.sink);
        }
    };
    if (threads <= 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    out.provenance.config_hash = config_hash(scenarios);
    std::set<double> steps;
    for (const auto& sc : scenarios) {
        steps.insert(sc.sim.step);
    }
    for (double h : steps) {
        out.provenance.step_sizes += (out.provenance.step_sizes.empty() ? "" : ";") + format_number(h);
    }
    return out;
}

} // namespace sishd

#endif
