// havesim: dynamic neural field simulator for contextual interpretation of
// English "have" -- single runs, Monte Carlo batches, coupling-strength
// sweeps, and plot/export utilities.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dnf/batch.hpp"
#include "dnf/measures.hpp"
#include "dnf/scenario.hpp"
#include "dnf/svg.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << content;
}

json record_to_json(const dnf::SimRecord& r) {
    json j;
    j["condition"] = r.condition;
    j["seed"] = r.seed;
    j["c_dnf"] = r.c_dnf;
    j["peak_ca"] = r.peak_ca ? json(*r.peak_ca) : json(nullptr);
    j["peak_conn"] = r.peak_conn ? json(*r.peak_conn) : json(nullptr);
    j["reading"] = r.reading;
    j["acceptability"] = r.acceptability ? json(*r.acceptability) : json(nullptr);
    j["rt"] = r.rt ? json(*r.rt) : json(nullptr);
    j["rt_censored"] = r.rt_censored;
    return j;
}

json fit_to_json(const dnf::RegressionFit& fit) {
    json coeffs = json::array();
    for (size_t i = 0; i < 4; ++i)
        coeffs.push_back({{"name", dnf::RegressionFit::names[i]},
                          {"beta", fit.beta[i]},
                          {"se", fit.se[i]},
                          {"t", fit.t[i]},
                          {"p", fit.p[i]}});
    return {{"n", fit.n}, {"df", fit.df}, {"coefficients", coeffs}};
}

dnf::ScenarioConfig resolve_config(const std::string& condition, const std::string& scenario_path,
                                   std::optional<double> q, std::optional<double> c_dnf) {
    dnf::ScenarioConfig cfg = scenario_path.empty()
                                  ? dnf::build_condition(condition)
                                  : dnf::load_scenario(read_file(scenario_path));
    if (q) {
        cfg.params.field.q = *q;
        cfg.params.node.q = *q;
    }
    if (c_dnf) cfg.params.graph.set_c_dnf(*c_dnf);
    cfg.validate();
    return cfg;
}

int cmd_simulate(const std::string& condition, const std::string& scenario_path,
                 std::uint64_t seed, const std::string& out_path, std::optional<double> q,
                 std::optional<double> c_dnf) {
    const auto cfg = resolve_config(condition, scenario_path, q, c_dnf);
    const auto trace = dnf::run_simulation(cfg, seed);
    std::ostringstream csv;
    dnf::write_trace_csv(csv, trace);
    write_file(out_path, csv.str());
    std::cout << record_to_json(dnf::evaluate_record(trace, cfg)).dump() << "\n";
    return exit_ok;
}

int cmd_batch(const std::vector<std::string>& conditions, std::size_t n, std::uint64_t seed,
              const std::string& out_path, const std::string& summary_path,
              std::optional<double> q, std::optional<double> c_dnf, unsigned workers) {
    std::vector<dnf::ScenarioConfig> configs;
    for (const auto& c : conditions) configs.push_back(resolve_config(c, "", q, c_dnf));

    const auto batch = dnf::run_batch(configs, n, seed, workers);
    std::ostringstream csv;
    dnf::write_records_csv(csv, batch.records);
    write_file(out_path, csv.str());

    json summary;
    summary["master_seed"] = batch.master_seed;
    summary["n_per_condition"] = batch.n_per_condition;
    summary["conditions"] = json::array();
    for (const auto& s : dnf::summarize(batch.records))
        summary["conditions"].push_back({{"condition", s.condition},
                                         {"n", s.n},
                                         {"n_censored", s.n_censored},
                                         {"mean_acceptability", s.mean_acceptability},
                                         {"acc_ci", {s.acc_ci_lo, s.acc_ci_hi}},
                                         {"mean_rt", s.mean_rt},
                                         {"rt_ci", {s.rt_ci_lo, s.rt_ci_hi}}});
    try {
        const auto analysis = dnf::analyze(batch.records);
        json rho;
        for (const auto& [cond, sp] : analysis.spearman_by_condition)
            rho[cond] = {{"rho", sp.rho}, {"p", sp.p}, {"n", sp.n}};
        summary["spearman"] = rho;
        summary["regression"] = fit_to_json(analysis.regression);
        summary["signflip"] = fit_to_json(analysis.signflip);
        summary["n_used"] = analysis.n_used;
    } catch (const std::invalid_argument&) {
        // too few usable rows (or a single context); summary stays descriptive
    }
    write_file(summary_path, summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    return exit_ok;
}

int cmd_sweep(const std::vector<double>& values, std::size_t n, std::uint64_t seed,
              const std::string& out_path, const std::string& plot_path, unsigned workers) {
    const auto table = dnf::sweep_cdnf(values, n, seed, workers);
    std::ostringstream csv;
    dnf::write_sweep_csv(csv, table);
    write_file(out_path, csv.str());
    if (!plot_path.empty()) write_file(plot_path, dnf::svg_sweep(table));
    return exit_ok;
}

int cmd_export_scenario(const std::string& condition, const std::string& out_path) {
    const std::string text = dnf::serialize_scenario(dnf::build_condition(condition));
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return exit_ok;
}

int cmd_plot(const std::string& records_path, const std::string& kind,
             const std::string& out_path) {
    std::ifstream in(records_path);
    if (!in) throw std::invalid_argument("cannot open '" + records_path + "'");
    const auto records = dnf::read_records_csv(in);

    std::string svg;
    if (kind == "peak-hist")
        svg = dnf::svg_peak_hist(records);
    else if (kind == "acc-hist")
        svg = dnf::svg_acc_hist(records);
    else if (kind == "rt-acc-scatter")
        svg = dnf::svg_rt_acc_scatter(records);
    else
        throw std::invalid_argument("unknown plot kind '" + kind + "'");
    write_file(out_path, svg);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic neural field simulator for contextual interpretation of 'have'"};
    app.require_subcommand(1);

    // simulate
    std::string sim_condition = "canonical", sim_scenario, sim_out = "trace.csv";
    std::uint64_t sim_seed = 0;
    std::optional<double> sim_q, sim_cdnf;
    auto* simulate = app.add_subcommand("simulate", "run one simulation, write the trace CSV");
    simulate->add_option("--condition", sim_condition,
                         "built-in condition: canonical, adjacency, possession")
        ->capture_default_str();
    simulate->add_option("--scenario", sim_scenario, "scenario JSON file (overrides --condition)");
    simulate->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
    simulate->add_option("--out", sim_out, "trace CSV path")->capture_default_str();
    simulate->add_option("--q", sim_q, "noise gain override for fields and node (default: 4 field / 1 node)");
    simulate->add_option("--c-dnf", sim_cdnf, "field-field coupling gain override (default 0.35)");

    // batch
    std::vector<std::string> batch_conditions = {"adjacency", "possession"};
    std::size_t batch_n = 1000;
    std::uint64_t batch_seed = 42;
    std::string batch_out = "records.csv", batch_summary = "summary.json";
    std::optional<double> batch_q, batch_cdnf;
    unsigned batch_workers = 0;
    auto* batch = app.add_subcommand("batch", "run n simulations per condition, write records CSV + summary JSON");
    batch->add_option("--conditions", batch_conditions, "conditions to run")
        ->delimiter(',')
        ->capture_default_str();
    batch->add_option("--n", batch_n, "simulations per condition")->capture_default_str();
    batch->add_option("--seed", batch_seed, "master seed")->capture_default_str();
    batch->add_option("--out", batch_out, "records CSV path")->capture_default_str();
    batch->add_option("--summary", batch_summary, "summary JSON path")->capture_default_str();
    batch->add_option("--q", batch_q, "noise gain override for fields and node");
    batch->add_option("--c-dnf", batch_cdnf, "field-field coupling gain override (default 0.35)");
    batch->add_option("--workers", batch_workers,
                      "worker threads (default: HAVESIM_WORKERS env or hardware)");

    // sweep
    std::vector<double> sweep_values = {0.25, 0.30, 0.35, 0.40, 0.45};
    std::size_t sweep_n = 1000;
    std::uint64_t sweep_seed = 42;
    std::string sweep_out = "sweep.csv", sweep_plot;
    unsigned sweep_workers = 0;
    auto* sweep = app.add_subcommand("sweep", "sweep c_dnf across adjacency/possession batches");
    sweep->add_option("--values", sweep_values, "c_dnf values")->delimiter(',')->capture_default_str();
    sweep->add_option("--n", sweep_n, "simulations per condition per value")->capture_default_str();
    sweep->add_option("--seed", sweep_seed, "master seed")->capture_default_str();
    sweep->add_option("--out", sweep_out, "sweep CSV path")->capture_default_str();
    sweep->add_option("--plot", sweep_plot, "also write an SVG line plot here");
    sweep->add_option("--workers", sweep_workers,
                      "worker threads (default: HAVESIM_WORKERS env or hardware)");

    // export-scenario
    std::string export_condition = "adjacency", export_out;
    auto* export_scn = app.add_subcommand("export-scenario", "write a built-in condition as scenario JSON");
    export_scn->add_option("--condition", export_condition, "built-in condition name")
        ->capture_default_str();
    export_scn->add_option("--out", export_out, "output path (default: stdout)");

    // plot
    std::string plot_records, plot_kind = "peak-hist", plot_out = "plot.svg";
    auto* plot = app.add_subcommand("plot", "render an SVG from a records CSV");
    plot->add_option("--records", plot_records, "records CSV path")->required();
    plot->add_option("--kind", plot_kind, "peak-hist, acc-hist, or rt-acc-scatter")
        ->capture_default_str();
    plot->add_option("--out", plot_out, "SVG output path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (simulate->parsed())
            return cmd_simulate(sim_condition, sim_scenario, sim_seed, sim_out, sim_q, sim_cdnf);
        if (batch->parsed())
            return cmd_batch(batch_conditions, batch_n, batch_seed, batch_out, batch_summary,
                             batch_q, batch_cdnf, batch_workers);
        if (sweep->parsed())
            return cmd_sweep(sweep_values, sweep_n, sweep_seed, sweep_out, sweep_plot,
                             sweep_workers);
        if (export_scn->parsed()) return cmd_export_scenario(export_condition, export_out);
        if (plot->parsed()) return cmd_plot(plot_records, plot_kind, plot_out);
    } catch (const dnf::NumericalAbort& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_ok;
}
