// Command-line front end: validate, run, simulate, identity-check.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "verdoorn/errors.hpp"
#include "verdoorn/panel_io.hpp"
#include "verdoorn/report.hpp"
#include "verdoorn/synth.hpp"

namespace {

using namespace verdoorn;

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& chunk : raw) {
        std::stringstream ss(chunk);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) out.push_back(item);
        }
    }
    return out;
}

int cmd_validate(const std::string& path) {
    try {
        const auto dataset = parse_panel(std::filesystem::path(path));
        std::cout << "ok: " << dataset.regions().size() << " regions, " << dataset.sectors().size() << " sectors, "
                  << dataset.years().size() << " years (" << dataset.years().front() << "-"
                  << dataset.years().back() << ")\n";
        return 0;
    } catch (const ValidationError& err) {
        for (const auto& d : err.defects()) std::cout << "[" << to_string(d.kind) << "] " << d.message << "\n";
        std::cerr << err.defects().size() << " defect(s) in " << path << "\n";
        return 1;
    } catch (const Error& err) {
        std::cerr << err.what() << "\n";
        return 1;
    }
}

struct RunFlags {
    std::string config;
    std::string input;
    std::string grouping;
    std::vector<std::string> equations;
    std::vector<std::string> estimators;
    std::vector<std::string> groups;
    std::vector<double> significance;
    std::string format;
    std::string output;
};

int cmd_run(const RunFlags& flags) {
    RunConfig config;
    try {
        if (!flags.config.empty()) config = load_run_config(flags.config);
        if (!flags.input.empty()) config.input = flags.input;
        if (!flags.grouping.empty()) {
            const auto g = parse_grouping(flags.grouping);
            if (!g) throw Error(ErrorKind::InvalidConfig, "unknown grouping '" + flags.grouping + "'");
            config.grouping = *g;
        }
        if (!flags.equations.empty()) {
            config.equations.clear();
            for (const auto& name : split_list(flags.equations)) {
                const auto eq = parse_equation(name);
                if (!eq) throw Error(ErrorKind::InvalidConfig, "unknown equation '" + name + "'");
                config.equations.push_back(*eq);
            }
        }
        if (!flags.estimators.empty()) {
            config.estimators.clear();
            for (const auto& name : split_list(flags.estimators)) {
                const auto est = parse_estimator(name);
                if (!est) throw Error(ErrorKind::InvalidConfig, "unknown estimator '" + name + "'");
                config.estimators.push_back(*est);
            }
        }
        if (!flags.groups.empty()) config.groups = split_list(flags.groups);
        if (!flags.significance.empty()) {
            if (flags.significance.size() != 2) {
                throw Error(ErrorKind::InvalidConfig, "--significance takes two levels: strong,weak");
            }
            config.levels = {flags.significance[0], flags.significance[1]};
        }
        if (!flags.format.empty()) {
            const auto f = parse_format(flags.format);
            if (!f) throw Error(ErrorKind::InvalidConfig, "unknown format '" + flags.format + "'");
            config.format = *f;
        }
        if (config.input.empty()) throw Error(ErrorKind::InvalidConfig, "no input file given");
    } catch (const Error& err) {
        std::cerr << err.what() << "\n";
        return 1;
    }

    const auto outcome = run(config);
    if (!flags.output.empty() && outcome.exit_code != 1) {
        std::ofstream out(flags.output, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "cannot write '" << flags.output << "'\n";
            return 1;
        }
        out << outcome.output;
    } else {
        std::cout << outcome.output;
    }
    std::cerr << outcome.diagnostics;
    return outcome.exit_code;
}

int cmd_identity(const std::string& input, const std::string& estimator_name, const std::string& grouping_name) {
    const auto estimator = parse_estimator(estimator_name);
    const auto grouping = parse_grouping(grouping_name);
    if (!estimator || !grouping) {
        std::cerr << "unknown estimator or grouping\n";
        return 1;
    }
    PanelDataset dataset;
    try {
        dataset = parse_panel(std::filesystem::path(input));
    } catch (const Error& err) {
        std::cerr << err.what() << "\n";
        return 1;
    }
    const auto runs = run_identity_checks(dataset, *estimator, *grouping);
    std::cout << render_identity_checks(runs, *estimator);
    for (const auto& r : runs) {
        if (!r.report || !r.report->holds()) return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verdoorn, Kaldor and Rowthorn growth-law panel regressions"};
    app.require_subcommand(1);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a level-panel file for defects");
    validate->add_option("file", validate_path, "Panel CSV")->required();

    RunFlags run_flags;
    auto* run_cmd = app.add_subcommand("run", "Estimate the requested equations per group");
    run_cmd->add_option("--config", run_flags.config, "JSON config; flags override it");
    run_cmd->add_option("--input,-i", run_flags.input, "Panel CSV");
    run_cmd->add_option("--grouping", run_flags.grouping, "by-sector | by-region");
    run_cmd->add_option("--equations", run_flags.equations,
                        "Comma list of verdoorn, kaldor, rowthorn_p, rowthorn_q, augmented");
    run_cmd->add_option("--estimators", run_flags.estimators, "Comma list of dif, gls");
    run_cmd->add_option("--groups", run_flags.groups, "Restrict to these sectors or regions");
    run_cmd->add_option("--significance", run_flags.significance, "Two-sided levels for * and **")->delimiter(',');
    run_cmd->add_option("--format", run_flags.format, "table | csv | records");
    run_cmd->add_option("--output,-o", run_flags.output, "Write the report here instead of stdout");

    synth::DgpConfig dgp;
    std::string sim_out;
    std::string effects = "fixed";
    std::vector<std::string> sectors;
    auto* simulate = app.add_subcommand("simulate", "Write a synthetic panel and its planted truth");
    simulate->add_option("--entities", dgp.n_entities, "Number of regions")->capture_default_str();
    simulate->add_option("--intervals", dgp.n_intervals, "Growth intervals (years - 1)")->capture_default_str();
    simulate->add_option("--a0", dgp.coefficients[0], "Planted constant")->capture_default_str();
    simulate->add_option("--b", dgp.coefficients[1], "Planted Verdoorn coefficient")->capture_default_str();
    simulate->add_option("--cq-coef", dgp.coefficients[2], "Planted GFCF/output coefficient")->capture_default_str();
    simulate->add_option("--fq-coef", dgp.coefficients[3], "Planted outflow/output coefficient")->capture_default_str();
    simulate->add_option("--conc-coef", dgp.coefficients[4], "Planted concentration coefficient")
        ->capture_default_str();
    simulate->add_option("--sigma-entity", dgp.sigma_entity, "Entity effect sd")->capture_default_str();
    simulate->add_option("--sigma-noise", dgp.sigma_noise, "Idiosyncratic noise sd")->capture_default_str();
    simulate->add_option("--effects", effects, "fixed (correlated with q) | random")->capture_default_str();
    simulate->add_option("--q-mean", dgp.q_mean, "Mean output growth")->capture_default_str();
    simulate->add_option("--q-sd", dgp.q_sd, "Output growth sd")->capture_default_str();
    simulate->add_option("--sectors", sectors, "Comma list of sector labels (default: synthetic)");
    simulate->add_option("--first-year", dgp.first_year, "First year of the panel")->capture_default_str();
    simulate->add_option("--seed", dgp.seed, "RNG seed")->capture_default_str();
    simulate->add_option("--out,-o", sim_out, "Output CSV")->required();

    std::string id_input;
    std::string id_estimator = "dif";
    std::string id_grouping = "by-sector";
    auto* identity = app.add_subcommand("identity-check", "Verify the exact cross-equation OLS identities");
    identity->add_option("--input,-i", id_input, "Panel CSV")->required();
    identity->add_option("--estimator", id_estimator, "dif | gls")->capture_default_str();
    identity->add_option("--grouping", id_grouping, "by-sector | by-region")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return cmd_validate(validate_path);
    if (run_cmd->parsed()) return cmd_run(run_flags);
    if (identity->parsed()) return cmd_identity(id_input, id_estimator, id_grouping);
    if (simulate->parsed()) {
        try {
            if (effects == "fixed") {
                dgp.effects = synth::EffectKind::fixed;
            } else if (effects == "random") {
                dgp.effects = synth::EffectKind::random;
            } else {
                throw Error(ErrorKind::InvalidConfig, "--effects must be fixed or random");
            }
            if (!sectors.empty()) dgp.sectors = split_list(sectors);
            write_simulation(dgp, sim_out);
        } catch (const Error& err) {
            std::cerr << err.what() << "\n";
            return 1;
        }
        std::cout << "wrote " << sim_out << " and " << sidecar_path(sim_out).string() << "\n";
        return 0;
    }
    return 0;
}
