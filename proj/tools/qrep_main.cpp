// qrep: command-line front end for the repeater purification/decoherence
// analysis engine.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "qrep/config.hpp"
#include "qrep/fixed_point.hpp"
#include "qrep/oracle.hpp"
#include "qrep/protocols.hpp"

namespace {

using qrep::OutputTable;
using qrep::RunConfig;

void write_output(const OutputTable& table, const RunConfig& config,
                  const std::string& format, const std::string& path) {
    std::string text;
    if (format == "csv") {
        text = qrep::to_csv(table);
    } else if (format == "json") {
        text = qrep::to_json(table, config);
    } else {
        throw qrep::config_error("format must be csv or json, got '" + format + "'");
    }
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw qrep::config_error("cannot write output file '" + path + "'");
    }
    out << text;
}

int cmd_regime(const RunConfig& config, const std::string& format,
               const std::string& path) {
    const auto tm = config.time_model();
    const auto m = config.noise_model();
    if (config.regime_max_level < 1) {
        throw qrep::config_error("regime.max_level must be >= 1");
    }
    OutputTable table;
    table.columns = {"level", "min_fidelity", "max_fidelity", "max_fidelity_pumping"};
    for (int level = 1; level <= config.regime_max_level; ++level) {
        const qrep::RegimeReport r =
            qrep::purification_regime(level, tm, m, config.regime_pump_f);
        std::vector<std::optional<double>> row{static_cast<double>(level)};
        if (r.empty) {
            row.insert(row.end(), {std::nullopt, std::nullopt, std::nullopt});
        } else {
            row.insert(row.end(),
                       {r.min_fidelity, r.max_fidelity, r.max_fidelity_pumping});
        }
        table.rows.push_back(std::move(row));
    }
    write_output(table, config, format, path);
    return 0;
}

int cmd_standard(const RunConfig& config, const std::string& format,
                 const std::string& path) {
    const auto tm = config.time_model();
    const auto m = config.noise_model();
    const qrep::ProtocolSpec spec = config.protocol_spec();
    std::vector<qrep::LevelReport> reports;
    switch (spec.kind) {
        case qrep::ProtocolKind::standard:
            reports = qrep::run_standard(spec, tm, m);
            break;
        case qrep::ProtocolKind::innsbruck:
            reports = qrep::run_innsbruck(spec, tm, m);
            break;
        case qrep::ProtocolKind::blind:
            reports = qrep::run_blind_topped(spec, tm, m).reports;
            break;
    }
    OutputTable table;
    table.columns = {"level", "resources", "fidelity", "elapsed_s"};
    for (const auto& r : reports) {
        table.rows.push_back({static_cast<double>(r.level), r.resources, r.fidelity,
                              r.elapsed_s});
    }
    write_output(table, config, format, path);
    return 0;
}

int cmd_pump_sweep(const RunConfig& config, const std::string& format,
                   const std::string& path) {
    const auto tm = config.time_model();
    OutputTable table;
    table.columns = {"error_rate", "max_level", "fidelity", "bound_level"};
    for (double rate : config.sweep_error_rates) {
        if (!(rate >= 0.0) || rate >= 0.75) {
            throw qrep::config_error("sweep error rates must lie in [0, 0.75), got " +
                                     std::to_string(rate));
        }
        qrep::NoiseModel m{1.0 - rate, 1.0 - rate, config.noise_kappa};
        const qrep::StrategyResult best = qrep::optimize_strategy(
            tm, m, qrep::WernerParams::from_fidelity(config.protocol_initial_f));
        const int bound = qrep::fixed_point_level_bound(tm, m, 12);
        table.rows.push_back({rate, static_cast<double>(best.max_level),
                              best.fidelity, static_cast<double>(bound)});
    }
    write_output(table, config, format, path);
    return 0;
}

int cmd_blind(const RunConfig& config, const std::string& format,
              const std::string& path) {
    OutputTable table;
    table.columns = {"blind_levels", "p_suc", "overhead", "distance_gain"};
    if (config.blind_max_levels < 1) {
        throw qrep::config_error("blind.m_max must be >= 1");
    }
    for (int m = 1; m <= config.blind_max_levels; ++m) {
        for (double p : config.blind_p_sucs) {
            const qrep::BlindOverhead b = qrep::blind_overhead(
                config.blind_steps, config.blind_branching, m, p);
            table.rows.push_back({static_cast<double>(m), p, b.overhead,
                                  b.distance_gain});
        }
    }
    write_output(table, config, format, path);
    return 0;
}

int cmd_oracle_check(const RunConfig& config, const std::string& format,
                     const std::string& path, bool inject_error) {
    const qrep::OracleCheckReport rep =
        qrep::run_oracle_check(config.seed, config.oracle_trials, inject_error);
    constexpr double tol = 1e-12;
    std::printf("oracle check: %zu random input pairs per map\n", rep.trials);
    std::printf("  purification outputs   max |dev| = %.3e\n", rep.max_dev_purify);
    std::printf("  purification prob      max |dev| = %.3e\n", rep.max_dev_purify_prob);
    std::printf("  outcome completeness   max |dev| = %.3e\n", rep.max_dev_class_total);
    std::printf("  connection outputs     max |dev| = %.3e\n", rep.max_dev_connect);
    std::printf("  connection prob        max |dev| = %.3e\n", rep.max_dev_connect_prob);
    std::printf("  twirl projection       max |dev| = %.3e\n", rep.max_dev_twirl);
    std::printf("  storage map            max |dev| = %.3e\n", rep.max_dev_memory);
    std::printf("verdict: %s (tolerance %.1e)\n", rep.pass(tol) ? "PASS" : "FAIL", tol);
    if (!path.empty()) {
        OutputTable table;
        table.columns = {"trials",       "purify", "purify_prob", "class_total",
                         "connect",      "connect_prob", "twirl",  "memory"};
        table.rows.push_back({static_cast<double>(rep.trials), rep.max_dev_purify,
                              rep.max_dev_purify_prob, rep.max_dev_class_total,
                              rep.max_dev_connect, rep.max_dev_connect_prob,
                              rep.max_dev_twirl, rep.max_dev_memory});
        write_output(table, config, format, path);
    }
    return rep.pass(tol) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph-state repeater analysis: purification regimes, protocol "
                 "runs, strategy sweeps, blind-mode overheads"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    std::map<std::string, std::string> overrides;
    bool inject_error = false;

    app.add_option("--config", config_path, "flat key = value config file");
    app.add_option("--output", output_path, "write the result table to this path");
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    // Every config key doubles as a flag; values are validated centrally by
    // the config layer so file and flag behave identically.
    for (const auto& [key, unused] : qrep::config_entries(RunConfig{})) {
        (void)unused;
        app.add_option_function<std::string>(
            "--" + key,
            [&overrides, key = key](const std::string& value) { overrides[key] = value; },
            "override config key " + key);
    }
    CLI::App* regime = app.add_subcommand(
        "regime", "per-level purification windows and pumping ceilings");
    CLI::App* standard = app.add_subcommand(
        "standard", "run the configured repeater protocol level by level");
    CLI::App* sweep = app.add_subcommand(
        "pump-sweep", "best strategy and reachable level across error rates");
    CLI::App* blind = app.add_subcommand(
        "blind", "parallel-overhead table for blind top levels");
    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "cross-check analytic maps against the dense simulator");
    oracle->add_flag("--inject-error", inject_error,
                     "deliberately skew the analytic side (self-test)")
        ->group("");
    for (CLI::App* sub : {regime, standard, sweep, blind, oracle}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::map<std::string, std::string> file_entries;
        if (!config_path.empty()) file_entries = qrep::parse_config_file(config_path);
        const RunConfig config = qrep::make_config(file_entries, overrides);
        if (regime->parsed()) return cmd_regime(config, format, output_path);
        if (standard->parsed()) return cmd_standard(config, format, output_path);
        if (sweep->parsed()) return cmd_pump_sweep(config, format, output_path);
        if (blind->parsed()) return cmd_blind(config, format, output_path);
        if (oracle->parsed())
            return cmd_oracle_check(config, format, output_path, inject_error);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const qrep::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const qrep::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << "\n";
        return 2;
    }
}
