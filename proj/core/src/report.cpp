#include "verdoorn/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "verdoorn/errors.hpp"
#include "verdoorn/panel_io.hpp"

namespace verdoorn {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    std::replace(out.begin(), out.end(), '_', '-');
    return out;
}

std::string grouping_flag(Grouping g) {
    return g == Grouping::by_region ? "by-region" : "by-sector";
}

std::vector<Group> groups_for(const PanelDataset& dataset, const RunConfig& config) {
    std::vector<Group> groups;
    if (config.grouping == Grouping::by_region) {
        for (const auto& r : dataset.regions()) groups.push_back(Group::by_region(r));
    } else {
        for (const auto& s : dataset.sectors()) groups.push_back(Group::by_sector(s));
    }
    if (!config.groups.empty()) {
        std::vector<Group> picked;
        for (const auto& label : config.groups) {
            const auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.label == label; });
            picked.push_back(it != groups.end() ? *it : Group{config.grouping, label});
        }
        groups = std::move(picked);
    }
    return groups;
}

std::string format_or_na(double value) {
    return std::isfinite(value) ? format_fixed3(value) : std::string("n/a");
}

struct Column {
    std::string header;
    std::string term;  // coefficient name; empty for the fit-level columns
};

std::vector<Column> table_columns(const RunConfig& config) {
    auto uses = [&](Variable v) {
        return std::any_of(config.equations.begin(), config.equations.end(), [&](Equation eq) {
            const auto form = form_of(eq);
            return std::find(form.regressors.begin(), form.regressors.end(), v) != form.regressors.end();
        });
    };
    std::vector<Column> cols{{"Const.", std::string(kConstantName)}};
    if (uses(Variable::q)) cols.push_back({"q_i", "q"});
    if (uses(Variable::e)) cols.push_back({"e_i", "e"});
    if (uses(Variable::cq)) cols.push_back({"C_i/Q_i", "cq"});
    if (uses(Variable::fq)) cols.push_back({"F_i/Q_ik", "fq"});
    if (uses(Variable::conc)) cols.push_back({"E_i/E_n", "conc"});
    return cols;
}

std::string rstrip(std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

std::string render_table(const RunGrid& grid, const RunConfig& config) {
    std::ostringstream out;
    out << "# growth-law panel regressions\n";
    out << "# input: " << config.input.string() << "\n";
    out << "# grouping: " << grouping_flag(config.grouping) << " (entities are "
        << (config.grouping == Grouping::by_region ? "sectors" : "regions") << ")\n";
    out << "# significance: * at " << format_double(config.levels.strong * 100) << "%, ** at "
        << format_double(config.levels.weak * 100) << "% (two-sided, exact Student t quantiles)\n";
    out << "# cells: coefficient (t-statistic); DIF rows have no constant and an uncentered R2\n";

    const auto columns = table_columns(config);
    std::size_t cell_index = 0;
    for (const auto& group : grid.groups) {
        std::vector<std::vector<std::string>> table;
        std::vector<std::string> header{"Equation", "M.E."};
        for (const auto& c : columns) header.push_back(c.header);
        header.insert(header.end(), {"DW", "R2", "G.L."});
        table.push_back(header);

        std::vector<std::string> notes;
        std::vector<std::string> error_rows;
        for (std::size_t ei = 0; ei < config.equations.size(); ++ei) {
            for (std::size_t ki = 0; ki < config.estimators.size(); ++ki) {
                const auto& cell = grid.cells[cell_index++];
                std::vector<std::string> row;
                row.push_back(ki == 0 ? std::string(display_name(cell.equation)) : "");
                row.push_back(std::string(to_string(cell.estimator)));
                if (!cell.fit) {
                    row.push_back("error: " + cell.error);
                    table.push_back(std::move(row));
                    continue;
                }
                const auto& fit = *cell.fit;
                for (const auto& c : columns) {
                    const auto* coef = fit.find(c.term);
                    row.push_back(coef ? format_coefficient(*coef) : "");
                }
                row.push_back(format_or_na(fit.fit.durbin_watson));
                row.push_back(format_or_na(fit.fit.r_squared));
                row.push_back(std::to_string(fit.fit.df));
                table.push_back(std::move(row));
                for (const auto& w : fit.warnings) {
                    notes.push_back("# warning (" + std::string(display_name(cell.equation)) + " " +
                                    std::string(to_string(cell.estimator)) + "): " + w);
                }
            }
        }

        std::vector<std::size_t> widths(header.size(), 0);
        for (const auto& row : table) {
            // Error rows spill past the column grid and do not set widths.
            if (row.size() != header.size()) continue;
            for (std::size_t j = 0; j < row.size(); ++j) widths[j] = std::max(widths[j], row[j].size());
        }

        out << "\n" << group.label << "\n";
        for (const auto& row : table) {
            std::string line;
            for (std::size_t j = 0; j < row.size(); ++j) {
                std::string cell = row[j];
                if (j + 1 < row.size()) cell.resize(std::max(cell.size(), widths[j]), ' ');
                line += cell;
                if (j + 1 < row.size()) line += "  ";
            }
            out << rstrip(line) << "\n";
        }
        for (const auto& n : notes) out << n << "\n";
    }
    return out.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    return out + "\"";
}

std::string render_csv(const RunGrid& grid) {
    std::ostringstream out;
    out << "group,equation,estimator,term,estimate,std_error,t_stat,flag,dw,r2,df,error\n";
    for (const auto& cell : grid.cells) {
        const std::string prefix = csv_field(cell.group.label) + "," + std::string(to_string(cell.equation)) + "," +
                                   std::string(to_string(cell.estimator)) + ",";
        if (!cell.fit) {
            out << prefix << ",,,,error,,,," << csv_field(cell.error) << "\n";
            continue;
        }
        const auto& fit = *cell.fit;
        for (const auto& c : fit.coefficients) {
            out << prefix << c.name << "," << format_double(c.estimate) << "," << format_double(c.std_error) << ","
                << format_double(c.t_stat) << "," << to_string(c.flag) << "," << format_double(fit.fit.durbin_watson)
                << "," << format_double(fit.fit.r_squared) << "," << fit.fit.df << ",\n";
        }
    }
    return out.str();
}

ordered_json number_or_null(double v) {
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

std::string render_records(const RunGrid& grid, const RunConfig& config) {
    std::ostringstream out;
    for (const auto& cell : grid.cells) {
        ordered_json base;
        base["group"] = cell.group.label;
        base["grouping"] = grouping_flag(config.grouping);
        base["equation"] = std::string(to_string(cell.equation));
        base["estimator"] = std::string(to_string(cell.estimator));
        if (!cell.fit) {
            ordered_json rec{{"record", "error"}};
            rec.update(base);
            rec["message"] = cell.error;
            out << rec.dump() << "\n";
            continue;
        }
        const auto& fit = *cell.fit;
        for (const auto& c : fit.coefficients) {
            ordered_json rec{{"record", "coefficient"}};
            rec.update(base);
            rec["name"] = c.name;
            rec["estimate"] = number_or_null(c.estimate);
            rec["std_error"] = number_or_null(c.std_error);
            rec["t_stat"] = number_or_null(c.t_stat);
            rec["flag"] = std::string(to_string(c.flag));
            out << rec.dump() << "\n";
        }
        ordered_json summary{{"record", "fit"}};
        summary.update(base);
        summary["dw"] = number_or_null(fit.fit.durbin_watson);
        summary["r2"] = number_or_null(fit.fit.r_squared);
        summary["df"] = fit.fit.df;
        summary["sigma2"] = number_or_null(fit.fit.sigma2);
        if (fit.components) {
            summary["theta"] = fit.components->theta;
            summary["sigma2_idio"] = fit.components->sigma2_idio;
            summary["sigma2_entity"] = fit.components->sigma2_entity;
        }
        summary["warnings"] = fit.warnings;
        out << summary.dump() << "\n";
    }
    return out.str();
}

std::vector<std::string> string_list(const ordered_json& value, const char* key) {
    std::vector<std::string> out;
    if (value.is_string()) {
        std::stringstream ss(value.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) out.push_back(item);
        }
        return out;
    }
    if (!value.is_array()) throw Error(ErrorKind::InvalidConfig, std::string("'") + key + "' must be a list");
    for (const auto& v : value) out.push_back(v.get<std::string>());
    return out;
}

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view text) {
    const auto s = lower(text);
    if (s == "table" || s == "text-table" || s == "text") return OutputFormat::table;
    if (s == "csv" || s == "delimited") return OutputFormat::csv;
    if (s == "records" || s == "structured-records" || s == "jsonl") return OutputFormat::records;
    return std::nullopt;
}

std::optional<Grouping> parse_grouping(std::string_view text) {
    const auto s = lower(text);
    if (s == "by-sector" || s == "sector") return Grouping::by_sector;
    if (s == "by-region" || s == "region") return Grouping::by_region;
    return std::nullopt;
}

std::optional<EstimatorKind> parse_estimator(std::string_view text) {
    const auto s = lower(text);
    if (s == "dif") return EstimatorKind::dif;
    if (s == "gls") return EstimatorKind::gls;
    return std::nullopt;
}

void check_run_config(const RunConfig& config) {
    if (config.equations.empty()) throw Error(ErrorKind::InvalidConfig, "select at least one equation");
    if (config.estimators.empty()) throw Error(ErrorKind::InvalidConfig, "select at least one estimator");
    if (config.grouping == Grouping::cell) throw Error(ErrorKind::InvalidConfig, "grouping must be by-sector or by-region");
    const auto& lv = config.levels;
    if (!(lv.strong > 0.0 && lv.strong < lv.weak && lv.weak < 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "significance levels must satisfy 0 < strong < weak < 1");
    }
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open config '" + path.string() + "'");
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& err) {
        throw Error(ErrorKind::InvalidConfig, path.string() + ": " + err.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");

    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "input") {
                base.input = value.get<std::string>();
            } else if (key == "grouping") {
                const auto g = parse_grouping(value.get<std::string>());
                if (!g) throw Error(ErrorKind::InvalidConfig, "unknown grouping '" + value.get<std::string>() + "'");
                base.grouping = *g;
            } else if (key == "equations") {
                base.equations.clear();
                for (const auto& name : string_list(value, "equations")) {
                    const auto eq = parse_equation(name);
                    if (!eq) throw Error(ErrorKind::InvalidConfig, "unknown equation '" + name + "'");
                    base.equations.push_back(*eq);
                }
            } else if (key == "estimators") {
                base.estimators.clear();
                for (const auto& name : string_list(value, "estimators")) {
                    const auto est = parse_estimator(name);
                    if (!est) throw Error(ErrorKind::InvalidConfig, "unknown estimator '" + name + "'");
                    base.estimators.push_back(*est);
                }
            } else if (key == "format") {
                const auto f = parse_format(value.get<std::string>());
                if (!f) throw Error(ErrorKind::InvalidConfig, "unknown format '" + value.get<std::string>() + "'");
                base.format = *f;
            } else if (key == "significance") {
                if (!value.is_array() || value.size() != 2) {
                    throw Error(ErrorKind::InvalidConfig, "'significance' must be [strong, weak]");
                }
                base.levels = {value[0].get<double>(), value[1].get<double>()};
            } else if (key == "groups") {
                base.groups = string_list(value, "groups");
            } else {
                throw Error(ErrorKind::InvalidConfig, "unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& err) {
        throw Error(ErrorKind::InvalidConfig, path.string() + ": " + err.what());
    }
    return base;
}

std::size_t RunGrid::failed() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const RunCell& c) { return !c.fit; }));
}

RunGrid run_grid(const PanelDataset& dataset, const RunConfig& config) {
    check_run_config(config);
    RunGrid grid;
    grid.groups = groups_for(dataset, config);

    std::optional<GrowthPanel> panel;
    std::string panel_error;
    try {
        panel = growth_rates(dataset);
    } catch (const Error& err) {
        panel_error = err.what();
    }

    const FitOptions options{config.levels, std::nullopt};
    for (const auto& group : grid.groups) {
        for (auto eq : config.equations) {
            for (auto est : config.estimators) {
                RunCell cell{group, eq, est, std::nullopt, {}};
                if (!panel) {
                    cell.error = panel_error;
                } else {
                    try {
                        cell.fit = fit_model(*panel, ModelSpec{eq, est, group}, options);
                    } catch (const Error& err) {
                        cell.error = err.what();
                    }
                }
                grid.cells.push_back(std::move(cell));
            }
        }
    }
    return grid;
}

std::string stars(Significance flag) {
    switch (flag) {
        case Significance::at_5pct: return "*";
        case Significance::at_10pct: return "**";
        case Significance::none: break;
    }
    return "";
}

std::string format_fixed3(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string format_coefficient(const NamedCoefficient& c) {
    return format_fixed3(c.estimate) + stars(c.flag) + " (" + format_fixed3(c.t_stat) + ")";
}

std::string render(const RunGrid& grid, const RunConfig& config) {
    switch (config.format) {
        case OutputFormat::table: return render_table(grid, config);
        case OutputFormat::csv: return render_csv(grid);
        case OutputFormat::records: return render_records(grid, config);
    }
    return {};
}

RunOutcome run(const RunConfig& config) {
    RunOutcome outcome;
    PanelDataset dataset;
    try {
        check_run_config(config);
        dataset = parse_panel(config.input);
    } catch (const Error& err) {
        outcome.diagnostics = std::string(err.what()) + "\n";
        outcome.exit_code = 1;
        return outcome;
    }
    const auto grid = run_grid(dataset, config);
    outcome.output = render(grid, config);
    if (!grid.cells.empty() && grid.failed() == grid.cells.size()) {
        outcome.diagnostics = "estimation failed in every requested cell\n";
        outcome.exit_code = 2;
    }
    return outcome;
}

std::vector<IdentityRun> run_identity_checks(const PanelDataset& dataset, EstimatorKind estimator,
                                             Grouping grouping) {
    RunConfig config;
    config.grouping = grouping;
    const auto groups = groups_for(dataset, config);
    const auto panel = growth_rates(dataset);
    std::vector<IdentityRun> runs;
    for (const auto& group : groups) {
        IdentityRun run{group, std::nullopt, {}};
        try {
            run.report = identity_check(panel, estimator, group);
        } catch (const Error& err) {
            run.error = err.what();
        }
        runs.push_back(std::move(run));
    }
    return runs;
}

std::string render_identity_checks(const std::vector<IdentityRun>& runs, EstimatorKind estimator, double tolerance) {
    std::ostringstream out;
    char buf[160];
    out << "# cross-equation identities, estimator " << to_string(estimator) << ", tolerance "
        << format_double(tolerance) << "\n";
    for (const auto& run : runs) {
        out << "\n" << run.group.label;
        if (!run.report) {
            out << "\n  error: " << run.error << "\n";
            continue;
        }
        if (run.report->theta) out << "  (theta " << format_fixed3(*run.report->theta) << ")";
        out << "\n";
        for (const auto& id : run.report->identities) {
            std::snprintf(buf, sizeof(buf), "  %-18s lhs %+.12f  rhs %+.12f  residual %.3e  %s\n", id.name.c_str(),
                          id.lhs, id.rhs, id.residual, std::fabs(id.residual) < tolerance ? "ok" : "FAIL");
            out << buf;
        }
    }
    return out.str();
}

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
    auto p = out;
    p += ".truth.json";
    return p;
}

std::string truth_sidecar_json(const synth::DgpConfig& config) {
    ordered_json doc;
    doc["synthetic"] = true;
    doc["generator"] = std::string(synth::kGeneratorName);
    doc["seed"] = config.seed;
    doc["seed_derivation"] = "sector s draws from splitmix64(seed + (s + 1) * 0x9E3779B97F4A7C15)";
    doc["entities"] = config.n_entities;
    doc["intervals"] = config.n_intervals;
    doc["first_year"] = config.first_year;
    doc["sectors"] = config.sectors;
    doc["coefficients"] = {{"a0", config.coefficients[0]}, {"a1_q", config.coefficients[1]},
                           {"a2_cq", config.coefficients[2]}, {"a3_fq", config.coefficients[3]},
                           {"a4_conc", config.coefficients[4]}};
    doc["effects"] = std::string(synth::to_string(config.effects));
    doc["sigma_entity"] = config.sigma_entity;
    doc["sigma_noise"] = config.sigma_noise;
    doc["q_effect_loading"] = config.q_effect_loading;
    doc["q_mean"] = config.q_mean;
    doc["q_sd"] = config.q_sd;
    doc["cq_range"] = {config.cq_low, config.cq_high};
    doc["fq_range"] = {config.fq_low, config.fq_high};
    return doc.dump(2) + "\n";
}

void write_simulation(const synth::DgpConfig& config, const std::filesystem::path& out) {
    const auto data = synth::generate(config);
    write_panel(out, data.levels);
    const auto side = sidecar_path(out);
    std::ofstream sidecar(side, std::ios::binary | std::ios::trunc);
    if (!sidecar) throw Error(ErrorKind::IoError, "cannot write '" + side.string() + "'");
    sidecar << truth_sidecar_json(config);
    if (!sidecar) throw Error(ErrorKind::IoError, "write to '" + side.string() + "' failed");
}

}  // namespace verdoorn
