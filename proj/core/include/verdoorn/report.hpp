#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "verdoorn/growth_laws.hpp"
#include "verdoorn/panel_model.hpp"
#include "verdoorn/synth.hpp"

namespace verdoorn {

enum class OutputFormat { table, csv, records };

std::optional<OutputFormat> parse_format(std::string_view text);
std::optional<Grouping> parse_grouping(std::string_view text);
std::optional<EstimatorKind> parse_estimator(std::string_view text);

struct RunConfig {
    std::filesystem::path input;
    Grouping grouping = Grouping::by_sector;
    std::vector<Equation> equations{Equation::verdoorn, Equation::augmented};
    std::vector<EstimatorKind> estimators{EstimatorKind::dif, EstimatorKind::gls};
    SignificanceLevels levels;
    OutputFormat format = OutputFormat::table;
    /// Optional subset of group labels; empty means every sector (or region).
    std::vector<std::string> groups;
};

/// Throws InvalidConfig when no equation or estimator is selected, the
/// grouping is `cell`, or the significance levels are out of order.
void check_run_config(const RunConfig& config);

/// Reads a JSON config whose keys mirror the CLI flags: input, grouping,
/// equations, estimators, format, significance ([strong, weak]), groups.
/// Missing keys keep the values already in `base`.
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

struct RunCell {
    Group group;
    Equation equation = Equation::verdoorn;
    EstimatorKind estimator = EstimatorKind::dif;
    std::optional<FitResult> fit;
    std::string error;
};

struct RunGrid {
    std::vector<Group> groups;
    std::vector<RunCell> cells;

    std::size_t failed() const;
};

/// Every group × equation × estimator cell, groups in dataset order. A cell
/// that fails records its error and does not stop the others.
RunGrid run_grid(const PanelDataset& dataset, const RunConfig& config);

std::string stars(Significance flag);
/// "<value><stars> (<t>)" with three decimals.
std::string format_coefficient(const NamedCoefficient& c);
/// Three decimals; "-0.000" prints as "0.000".
std::string format_fixed3(double value);

std::string render(const RunGrid& grid, const RunConfig& config);

struct RunOutcome {
    std::string output;
    std::string diagnostics;
    /// 0 success, 1 parse or validation failure, 2 every cell failed.
    int exit_code = 0;
};

/// parse_panel + run_grid + render, with errors mapped to exit codes.
RunOutcome run(const RunConfig& config);

struct IdentityRun {
    Group group;
    std::optional<IdentityReport> report;
    std::string error;
};

std::vector<IdentityRun> run_identity_checks(const PanelDataset& dataset, EstimatorKind estimator,
                                             Grouping grouping);
std::string render_identity_checks(const std::vector<IdentityRun>& runs, EstimatorKind estimator,
                                   double tolerance = 1e-10);

/// Writes the generated levels to `out` and the planted truth to
/// sidecar_path(out). Both files are deterministic given the config.
void write_simulation(const synth::DgpConfig& config, const std::filesystem::path& out);
std::filesystem::path sidecar_path(const std::filesystem::path& out);
std::string truth_sidecar_json(const synth::DgpConfig& config);

}  // namespace verdoorn
