#include "verdoorn/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>

#include "verdoorn/errors.hpp"

namespace verdoorn::synth {
namespace {

constexpr double kBaseLevel = 100.0;
constexpr int kMaxFixedPointIterations = 500;

std::string region_name(std::size_t index, std::size_t count) {
    const int width = count >= 100 ? (count >= 1000 ? 4 : 3) : 2;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "R%0*zu", width, index + 1);
    return buf;
}

struct SectorDraws {
    // [entity][interval]
    std::vector<std::vector<double>> q, cq, fq, noise;
    std::vector<double> alpha;
    // [entity][year]
    std::vector<std::vector<double>> gva;
};

SectorDraws draw_sector(const DgpConfig& config, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = config.n_entities;
    const std::size_t t = config.n_intervals;
    SectorDraws d;
    d.alpha.resize(n);
    for (auto& a : d.alpha) a = rng.normal(0.0, config.sigma_entity);

    auto grid = [&] { return std::vector<std::vector<double>>(n, std::vector<double>(t)); };
    d.q = grid();
    d.cq = grid();
    d.fq = grid();
    d.noise = grid();
    const double loading = config.effects == EffectKind::fixed ? config.q_effect_loading : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < t; ++s) {
            d.q[i][s] = config.q_mean + loading * d.alpha[i] + rng.normal(0.0, config.q_sd);
            d.cq[i][s] = rng.uniform(config.cq_low, config.cq_high);
            d.fq[i][s] = rng.uniform(config.fq_low, config.fq_high);
            d.noise[i][s] = rng.normal(0.0, config.sigma_noise);
        }
    }
    d.gva.assign(n, std::vector<double>(t + 1));
    for (std::size_t i = 0; i < n; ++i) {
        double log_level = std::log(kBaseLevel);
        d.gva[i][0] = kBaseLevel;
        for (std::size_t s = 0; s < t; ++s) {
            log_level += d.q[i][s];
            d.gva[i][s + 1] = std::exp(log_level);
        }
    }
    return d;
}

}  // namespace

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string_view to_string(EffectKind kind) {
    return kind == EffectKind::fixed ? "fixed" : "random";
}

void check_config(const DgpConfig& config) {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); };
    if (config.n_entities < 2) fail("need at least two entities");
    if (config.n_intervals < 2) fail("need at least two intervals");
    if (!(config.sigma_entity >= 0.0)) fail("sigma_entity must be non-negative");
    if (!(config.sigma_noise >= 0.0)) fail("sigma_noise must be non-negative");
    if (!(config.q_sd >= 0.0)) fail("q_sd must be non-negative");
    if (!(config.cq_low >= 0.0 && config.cq_high >= config.cq_low)) fail("cq range must satisfy 0 <= low <= high");
    if (!(config.fq_low >= 0.0 && config.fq_high >= config.fq_low)) fail("fq range must satisfy 0 <= low <= high");
    for (double c : config.coefficients) {
        if (!std::isfinite(c)) fail("coefficients must be finite");
    }
    if (config.sectors.empty()) fail("need at least one sector");
    for (std::size_t i = 0; i < config.sectors.size(); ++i) {
        const auto& s = config.sectors[i];
        if (s.empty() || s == kAllSectors) fail("invalid sector name '" + s + "'");
        for (std::size_t j = 0; j < i; ++j) {
            if (config.sectors[j] == s) fail("duplicate sector '" + s + "'");
        }
    }
}

SyntheticPanel generate(const DgpConfig& config) {
    check_config(config);
    const std::size_t n = config.n_entities;
    const std::size_t t = config.n_intervals;
    const std::size_t n_sectors = config.sectors.size();
    const auto& a = config.coefficients;

    std::vector<SectorDraws> draws;
    draws.reserve(n_sectors);
    for (std::size_t s = 0; s < n_sectors; ++s) draws.push_back(draw_sector(config, derive_seed(config.seed, s)));

    // Region totals over generated sectors: the fq denominator.
    std::vector<std::vector<double>> gva_total(n, std::vector<double>(t + 1, 0.0));
    for (const auto& d : draws) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t y = 0; y <= t; ++y) gva_total[i][y] += d.gva[i][y];
        }
    }

    std::vector<LevelObservation> levels;
    std::vector<GrowthObservation> planted;
    std::vector<std::vector<LevelObservation>> totals(n, std::vector<LevelObservation>(t + 1));

    for (std::size_t si = 0; si < n_sectors; ++si) {
        const auto& d = draws[si];
        std::vector<std::vector<double>> emp(n, std::vector<double>(t + 1, kBaseLevel));
        std::vector<std::vector<double>> p(n, std::vector<double>(t)), e(n, std::vector<double>(t)),
            conc(n, std::vector<double>(t));

        for (std::size_t s = 0; s < t; ++s) {
            std::vector<double> share(n);
            double prev_total = 0.0;
            for (std::size_t i = 0; i < n; ++i) prev_total += emp[i][s];
            for (std::size_t i = 0; i < n; ++i) share[i] = emp[i][s] / prev_total;

            std::vector<double> next(n);
            bool converged = false;
            for (int iter = 0; iter < kMaxFixedPointIterations; ++iter) {
                double total = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    p[i][s] = a[0] + a[1] * d.q[i][s] + a[2] * d.cq[i][s] + a[3] * d.fq[i][s] + a[4] * share[i] +
                              d.alpha[i] + d.noise[i][s];
                    e[i][s] = d.q[i][s] - p[i][s];
                    next[i] = emp[i][s] * std::exp(e[i][s]);
                    total += next[i];
                }
                double change = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double updated = next[i] / total;
                    change = std::max(change, std::fabs(updated - share[i]));
                    share[i] = updated;
                }
                if (change <= 1e-15 || a[4] == 0.0) {
                    converged = true;
                    break;
                }
            }
            if (!converged) {
                throw Error(ErrorKind::InvalidConfig, "employment shares did not converge; reduce |a4|");
            }
            for (std::size_t i = 0; i < n; ++i) {
                emp[i][s + 1] = next[i];
                conc[i][s] = share[i];
            }
        }

        const auto& sector = config.sectors[si];
        for (std::size_t i = 0; i < n; ++i) {
            const auto region = region_name(i, n);
            for (std::size_t y = 0; y <= t; ++y) {
                LevelObservation obs;
                obs.region = region;
                obs.sector = sector;
                obs.year = config.first_year + static_cast<int>(y);
                obs.gva = d.gva[i][y];
                obs.employment = emp[i][y];
                // Year 0 ratios are not regressors; reuse the first interval's.
                const std::size_t s = y == 0 ? 0 : y - 1;
                obs.gfcf = d.cq[i][s] * d.gva[i][y];
                obs.outflow = d.fq[i][s] * gva_total[i][y];
                levels.push_back(obs);

                auto& tot = totals[i][y];
                tot.gva += obs.gva;
                tot.employment += obs.employment;
                tot.gfcf += obs.gfcf;
                tot.outflow += obs.outflow;
            }
            for (std::size_t s = 0; s < t; ++s) {
                GrowthObservation row;
                row.region = region;
                row.sector = sector;
                row.interval_end_year = config.first_year + static_cast<int>(s + 1);
                row.q = d.q[i][s];
                row.e = e[i][s];
                row.p = p[i][s];
                row.cq = d.cq[i][s];
                row.fq = d.fq[i][s];
                row.conc = conc[i][s];
                planted.push_back(std::move(row));
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t y = 0; y <= t; ++y) {
            auto tot = totals[i][y];
            tot.region = region_name(i, n);
            tot.sector = std::string(kAllSectors);
            tot.year = config.first_year + static_cast<int>(y);
            levels.push_back(std::move(tot));
        }
    }

    return SyntheticPanel{PanelDataset(std::move(levels)), GrowthPanel(Grouping::cell, std::move(planted))};
}

const CoefficientSummary* MonteCarloSummary::find(std::string_view name) const {
    for (const auto& c : coefficients) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

MonteCarloSummary monte_carlo(const DgpConfig& config, const ModelSpec& spec, std::size_t replications,
                              const FitOptions& options) {
    if (replications < 1) throw Error(ErrorKind::InvalidConfig, "need at least one replication");
    check_config(config);

    std::vector<FitResult> fits;
    fits.reserve(replications);
    for (std::size_t r = 0; r < replications; ++r) {
        DgpConfig rep = config;
        rep.seed = derive_seed(config.seed, 0x5EED0000ULL + r);
        const auto data = generate(rep);
        fits.push_back(fit_model(data.planted, spec, options));
    }

    MonteCarloSummary summary;
    summary.replications = replications;
    const bool verdoorn_family = spec.equation == Equation::verdoorn || spec.equation == Equation::augmented;
    for (std::size_t j = 0; j < fits.front().coefficients.size(); ++j) {
        CoefficientSummary c;
        c.name = fits.front().coefficients[j].name;
        for (const auto& f : fits) c.draws.push_back(f.coefficients[j].estimate);
        double sum = 0.0;
        for (double v : c.draws) sum += v;
        c.mean = sum / static_cast<double>(replications);
        double ss = 0.0;
        for (double v : c.draws) ss += (v - c.mean) * (v - c.mean);
        c.sd = replications > 1 ? std::sqrt(ss / static_cast<double>(replications - 1)) : 0.0;

        if (verdoorn_family) {
            const std::pair<std::string_view, double> planted[] = {
                {kConstantName, config.coefficients[0]}, {"q", config.coefficients[1]},
                {"cq", config.coefficients[2]}, {"fq", config.coefficients[3]}, {"conc", config.coefficients[4]}};
            for (const auto& [name, value] : planted) {
                if (c.name == name) c.truth = value;
            }
        }
        if (c.truth) c.bias = c.mean - *c.truth;
        summary.coefficients.push_back(std::move(c));
    }
    return summary;
}

}  // namespace verdoorn::synth
