#include "verdoorn/panel_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "verdoorn/errors.hpp"

namespace verdoorn {
namespace {

std::string cell_name(std::string_view region, std::string_view sector, int year) {
    std::ostringstream out;
    out << "(" << region << ", " << sector << ", " << year << ")";
    return out.str();
}

template <typename T>
void push_unique(std::vector<T>& seen, const T& value) {
    if (std::find(seen.begin(), seen.end(), value) == seen.end()) seen.push_back(value);
}

}  // namespace

PanelDataset::PanelDataset(std::vector<LevelObservation> observations)
    : observations_(std::move(observations)) {
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const auto& obs = observations_[i];
        push_unique(regions_, obs.region);
        push_unique(sectors_, obs.sector);
        push_unique(years_, obs.year);
        index_.try_emplace(std::make_tuple(obs.region, obs.sector, obs.year), i);
    }
    std::sort(years_.begin(), years_.end());
}

const LevelObservation* PanelDataset::find(std::string_view region, std::string_view sector, int year) const {
    const auto it = index_.find(std::make_tuple(std::string(region), std::string(sector), year));
    return it == index_.end() ? nullptr : &observations_[it->second];
}

std::string_view to_string(DefectKind kind) {
    switch (kind) {
        case DefectKind::Empty: return "empty";
        case DefectKind::MissingCell: return "missing_cell";
        case DefectKind::DuplicateCell: return "duplicate_cell";
        case DefectKind::NonPositiveLevel: return "non_positive_level";
        case DefectKind::NegativeLevel: return "negative_level";
        case DefectKind::NonFiniteValue: return "non_finite_value";
        case DefectKind::NonContiguousYears: return "non_contiguous_years";
        case DefectKind::TooFewYears: return "too_few_years";
        case DefectKind::MissingTotalSector: return "missing_total_sector";
    }
    return "unknown";
}

std::vector<Defect> validate(const PanelDataset& dataset) {
    std::vector<Defect> defects;
    if (dataset.observations().empty()) {
        defects.push_back({DefectKind::Empty, "dataset has no observations"});
        return defects;
    }

    std::map<std::tuple<std::string, std::string, int>, int> counts;
    for (const auto& obs : dataset.observations()) {
        const auto name = cell_name(obs.region, obs.sector, obs.year);
        if (++counts[{obs.region, obs.sector, obs.year}] == 2) {
            defects.push_back({DefectKind::DuplicateCell, "duplicate row for " + name});
        }
        const std::pair<const char*, double> fields[] = {
            {"gva", obs.gva}, {"employment", obs.employment}, {"gfcf", obs.gfcf}, {"outflow", obs.outflow}};
        for (const auto& [field, value] : fields) {
            if (!std::isfinite(value)) {
                defects.push_back({DefectKind::NonFiniteValue, std::string(field) + " is not finite at " + name});
            }
        }
        if (std::isfinite(obs.gva) && obs.gva <= 0.0) {
            defects.push_back({DefectKind::NonPositiveLevel, "gva must be positive at " + name});
        }
        if (std::isfinite(obs.employment) && obs.employment <= 0.0) {
            defects.push_back({DefectKind::NonPositiveLevel, "employment must be positive at " + name});
        }
        if (std::isfinite(obs.gfcf) && obs.gfcf < 0.0) {
            defects.push_back({DefectKind::NegativeLevel, "gfcf must be non-negative at " + name});
        }
        if (std::isfinite(obs.outflow) && obs.outflow < 0.0) {
            defects.push_back({DefectKind::NegativeLevel, "outflow must be non-negative at " + name});
        }
    }

    const auto& years = dataset.years();
    if (years.size() < 2) {
        defects.push_back({DefectKind::TooFewYears, "panel needs at least two years"});
    }
    if (!years.empty() && years.back() - years.front() + 1 != static_cast<int>(years.size())) {
        defects.push_back({DefectKind::NonContiguousYears, "years " + std::to_string(years.front()) + ".." +
                                                               std::to_string(years.back()) + " have gaps"});
    }
    const auto& sectors = dataset.sectors();
    if (std::find(sectors.begin(), sectors.end(), kAllSectors) == sectors.end()) {
        defects.push_back({DefectKind::MissingTotalSector,
                           "no '" + std::string(kAllSectors) + "' rows; the fq denominator is undefined"});
    }

    for (const auto& region : dataset.regions()) {
        for (const auto& sector : sectors) {
            for (int year : years) {
                if (!counts.contains({region, sector, year})) {
                    defects.push_back({DefectKind::MissingCell, "missing row for " + cell_name(region, sector, year)});
                }
            }
        }
    }
    return defects;
}

std::string_view to_string(Variable v) {
    switch (v) {
        case Variable::p: return "p";
        case Variable::q: return "q";
        case Variable::e: return "e";
        case Variable::cq: return "cq";
        case Variable::fq: return "fq";
        case Variable::conc: return "conc";
    }
    return "?";
}

double value_of(const GrowthObservation& row, Variable v) {
    return value_of(const_cast<GrowthObservation&>(row), v);
}

double& value_of(GrowthObservation& row, Variable v) {
    switch (v) {
        case Variable::p: return row.p;
        case Variable::q: return row.q;
        case Variable::e: return row.e;
        case Variable::cq: return row.cq;
        case Variable::fq: return row.fq;
        case Variable::conc: return row.conc;
    }
    return row.p;
}

std::string_view to_string(Grouping g) {
    switch (g) {
        case Grouping::cell: return "cell";
        case Grouping::by_sector: return "by_sector";
        case Grouping::by_region: return "by_region";
    }
    return "?";
}

GrowthPanel::GrowthPanel(Grouping grouping, std::vector<GrowthObservation> rows)
    : grouping_(grouping), rows_(std::move(rows)) {
    std::stable_sort(rows_.begin(), rows_.end(), [this](const auto& a, const auto& b) {
        const auto ka = entity_of(a);
        const auto kb = entity_of(b);
        if (ka != kb) return ka < kb;
        return a.interval_end_year < b.interval_end_year;
    });

    std::map<std::string, std::vector<int>> years_by_entity;
    for (const auto& row : rows_) {
        auto key = entity_of(row);
        if (entities_.empty() || entities_.back() != key) entities_.push_back(key);
        years_by_entity[key].push_back(row.interval_end_year);
    }
    if (entities_.empty()) return;

    years_ = years_by_entity.begin()->second;
    for (const auto& [entity, years] : years_by_entity) {
        if (years != years_) {
            throw Error(ErrorKind::UnbalancedPanel, "entity '" + entity + "' does not share the interval set of '" +
                                                        entities_.front() + "'");
        }
    }
    if (std::adjacent_find(years_.begin(), years_.end()) != years_.end()) {
        throw Error(ErrorKind::UnbalancedPanel, "repeated interval for entity '" + entities_.front() + "'");
    }
}

std::span<const GrowthObservation> GrowthPanel::entity_rows(std::size_t entity) const {
    const std::size_t t = years_.size();
    return std::span<const GrowthObservation>(rows_).subspan(entity * t, t);
}

std::string GrowthPanel::entity_of(const GrowthObservation& row) const {
    switch (grouping_) {
        case Grouping::by_sector: return row.region;
        case Grouping::by_region: return row.sector;
        case Grouping::cell: break;
    }
    return row.region + "/" + row.sector;
}

Eigen::VectorXd GrowthPanel::column(Variable v) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(rows_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i) out(static_cast<Eigen::Index>(i)) = value_of(rows_[i], v);
    return out;
}

Ratios build_ratios(const PanelDataset& dataset, std::string_view region, std::string_view sector, int year) {
    const auto* cell = dataset.find(region, sector, year);
    if (cell == nullptr) throw Error(ErrorKind::MissingCell, "no row for " + cell_name(region, sector, year));
    const auto* total = dataset.find(region, kAllSectors, year);
    if (total == nullptr) {
        throw Error(ErrorKind::MissingCell, "no row for " + cell_name(region, kAllSectors, year));
    }
    if (cell->gva == 0.0) throw Error(ErrorKind::ZeroDenominator, "gva is zero at " + cell_name(region, sector, year));
    if (total->gva == 0.0) {
        throw Error(ErrorKind::ZeroDenominator, "all-sectors gva is zero at " + cell_name(region, kAllSectors, year));
    }

    double national = 0.0;
    for (const auto& r : dataset.regions()) {
        const auto* other = dataset.find(r, sector, year);
        if (other == nullptr) throw Error(ErrorKind::MissingCell, "no row for " + cell_name(r, sector, year));
        national += other->employment;
    }
    if (national == 0.0) {
        throw Error(ErrorKind::ZeroDenominator, "national employment is zero for sector '" + std::string(sector) +
                                                    "' in " + std::to_string(year));
    }

    return Ratios{cell->gfcf / cell->gva, cell->outflow / total->gva, cell->employment / national};
}

GrowthPanel growth_rates(const PanelDataset& dataset) {
    const auto defects = validate(dataset);
    if (!defects.empty()) {
        const bool levels = std::all_of(defects.begin(), defects.end(), [](const Defect& d) {
            return d.kind == DefectKind::NonPositiveLevel || d.kind == DefectKind::NegativeLevel ||
                   d.kind == DefectKind::NonFiniteValue;
        });
        std::string message = defects.front().message;
        if (defects.size() > 1) message += " (+" + std::to_string(defects.size() - 1) + " more)";
        throw Error(levels ? ErrorKind::InvalidLevels : ErrorKind::ValidationFailed, message);
    }

    std::vector<GrowthObservation> rows;
    const auto& years = dataset.years();
    rows.reserve(dataset.regions().size() * dataset.sectors().size() * (years.size() - 1));
    for (const auto& region : dataset.regions()) {
        for (const auto& sector : dataset.sectors()) {
            for (std::size_t t = 1; t < years.size(); ++t) {
                const auto* prev = dataset.find(region, sector, years[t - 1]);
                const auto* curr = dataset.find(region, sector, years[t]);
                GrowthObservation row;
                row.region = region;
                row.sector = sector;
                row.interval_end_year = years[t];
                row.q = std::log(curr->gva) - std::log(prev->gva);
                row.e = std::log(curr->employment) - std::log(prev->employment);
                row.p = row.q - row.e;
                const auto ratios = build_ratios(dataset, region, sector, years[t]);
                row.cq = ratios.cq;
                row.fq = ratios.fq;
                row.conc = ratios.conc;
                rows.push_back(std::move(row));
            }
        }
    }
    return GrowthPanel(Grouping::cell, std::move(rows));
}

GrowthPanel select_group(const GrowthPanel& panel, const Group& group) {
    if (group.kind == Grouping::cell) throw Error(ErrorKind::UnknownGroup, "a group must be by_sector or by_region");
    std::vector<GrowthObservation> rows;
    for (const auto& row : panel.rows()) {
        const bool keep = group.kind == Grouping::by_sector
                              ? row.sector == group.label
                              : row.region == group.label && row.sector != kAllSectors;
        if (keep) rows.push_back(row);
    }
    return GrowthPanel(group.kind, std::move(rows));
}

GrowthPanel first_difference(const GrowthPanel& panel) {
    const std::size_t t = panel.interval_count();
    if (t < 2) {
        throw Error(ErrorKind::InsufficientIntervals,
                    "first differences need at least two intervals per entity, have " + std::to_string(t));
    }
    constexpr Variable kAll[] = {Variable::p, Variable::q, Variable::e, Variable::cq, Variable::fq, Variable::conc};
    std::vector<GrowthObservation> rows;
    rows.reserve(panel.entity_count() * (t - 1));
    for (std::size_t i = 0; i < panel.entity_count(); ++i) {
        const auto series = panel.entity_rows(i);
        for (std::size_t s = 1; s < t; ++s) {
            GrowthObservation row = series[s];
            for (auto v : kAll) value_of(row, v) = value_of(series[s], v) - value_of(series[s - 1], v);
            rows.push_back(std::move(row));
        }
    }
    return GrowthPanel(panel.grouping(), std::move(rows));
}

}  // namespace verdoorn
