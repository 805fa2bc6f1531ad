#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "verdoorn/growth_laws.hpp"
#include "verdoorn/panel_model.hpp"

namespace verdoorn::synth {

/// Portable generator: std::mt19937_64 (output fixed by the standard) with
/// uniforms built from the top 53 bits and normals from Box–Muller. Nothing
/// implementation-defined from <random> is used, so a seed reproduces the
/// same draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

inline constexpr std::string_view kGeneratorName = "mt19937_64/box-muller";

/// SplitMix64 finalizer applied to seed + stream·golden-ratio increment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// fixed: effects load onto the output-growth process (correlated with q, so
/// pooled OLS is biased). random: effects independent of every regressor.
enum class EffectKind { fixed, random };

std::string_view to_string(EffectKind kind);

struct DgpConfig {
    std::size_t n_entities = 5;
    std::size_t n_intervals = 4;
    /// a0..a4 of p = a0 + a1·q + a2·cq + a3·fq + a4·conc + α_i + ε.
    std::array<double, 5> coefficients{0.0, 0.7, 0.0, 0.0, 0.0};
    double sigma_entity = 0.0;
    double sigma_noise = 0.01;
    EffectKind effects = EffectKind::fixed;
    /// Weight of α_i in q under fixed effects.
    double q_effect_loading = 1.0;
    double q_mean = 0.03;
    double q_sd = 0.02;
    double cq_low = 0.10;
    double cq_high = 0.30;
    double fq_low = 0.20;
    double fq_high = 0.60;
    std::vector<std::string> sectors{"synthetic"};
    int first_year = 1995;
    std::uint64_t seed = 1;
};

/// Throws InvalidConfig on the first violated constraint.
void check_config(const DgpConfig& config);

struct SyntheticPanel {
    /// Levels for every generated sector plus all_sectors totals.
    PanelDataset levels;
    /// Cell-level growth rows of the generated sectors, exactly what
    /// growth_rates recovers from `levels`.
    GrowthPanel planted;
};

/// Entities are regions "R01", "R02", ...; each sector draws from its own
/// derived seed. Levels start at 100 and integrate the log growth rates;
/// all_sectors rows are the sums over generated sectors. Since conc depends
/// on the employment it helps determine, each year is solved by fixed-point
/// iteration (InvalidConfig if a4 is too large for it to converge).
SyntheticPanel generate(const DgpConfig& config);

struct CoefficientSummary {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;
    /// Planted value for the coefficient, when the spec has one.
    std::optional<double> truth;
    /// mean − truth, when truth is known.
    std::optional<double> bias;
    std::vector<double> draws;
};

struct MonteCarloSummary {
    std::size_t replications = 0;
    std::vector<CoefficientSummary> coefficients;

    const CoefficientSummary* find(std::string_view name) const;
};

/// Replication r uses derive_seed(config.seed, r). Fits run on the planted
/// panel, which equals the growth panel of the generated levels.
MonteCarloSummary monte_carlo(const DgpConfig& config, const ModelSpec& spec, std::size_t replications,
                              const FitOptions& options = {});

}  // namespace verdoorn::synth
