#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

namespace verdoorn {

/// Sector label of the total-economy rows; their GVA is the denominator of fq.
inline constexpr std::string_view kAllSectors = "all_sectors";

struct LevelObservation {
    std::string region;
    std::string sector;
    int year = 0;
    double gva = 0.0;
    double employment = 0.0;
    double gfcf = 0.0;
    double outflow = 0.0;

    bool operator==(const LevelObservation&) const = default;
};

/// Region × sector × year panel of level observations. Regions and sectors
/// keep their order of first appearance; years are sorted.
class PanelDataset {
public:
    PanelDataset() = default;
    explicit PanelDataset(std::vector<LevelObservation> observations);

    const std::vector<LevelObservation>& observations() const { return observations_; }
    const std::vector<std::string>& regions() const { return regions_; }
    const std::vector<std::string>& sectors() const { return sectors_; }
    const std::vector<int>& years() const { return years_; }

    /// First observation for the triple, or nullptr.
    const LevelObservation* find(std::string_view region, std::string_view sector, int year) const;

private:
    std::vector<LevelObservation> observations_;
    std::vector<std::string> regions_;
    std::vector<std::string> sectors_;
    std::vector<int> years_;
    std::map<std::tuple<std::string, std::string, int>, std::size_t, std::less<>> index_;
};

enum class DefectKind {
    Empty,
    MissingCell,
    DuplicateCell,
    NonPositiveLevel,
    NegativeLevel,
    NonFiniteValue,
    NonContiguousYears,
    TooFewYears,
    MissingTotalSector,
};

std::string_view to_string(DefectKind kind);

struct Defect {
    DefectKind kind;
    std::string message;
};

/// Empty iff the dataset is a balanced, contiguous panel with positive gva and
/// employment, non-negative gfcf and outflow, and all_sectors rows present.
std::vector<Defect> validate(const PanelDataset& dataset);

/// One regression row: growth over the interval ending at interval_end_year
/// plus the ratio regressors timestamped at that year.
struct GrowthObservation {
    std::string region;
    std::string sector;
    int interval_end_year = 0;
    double p = 0.0;
    double q = 0.0;
    double e = 0.0;
    double cq = 0.0;
    double fq = 0.0;
    double conc = 0.0;

    bool operator==(const GrowthObservation&) const = default;
};

enum class Variable { p, q, e, cq, fq, conc };

std::string_view to_string(Variable v);
double value_of(const GrowthObservation& row, Variable v);
double& value_of(GrowthObservation& row, Variable v);

/// What an entity is. `cell` treats every (region, sector) pair as an entity
/// and is what growth_rates produces; by_sector slices use regions as
/// entities, by_region slices use sectors.
enum class Grouping { cell, by_sector, by_region };

std::string_view to_string(Grouping g);

/// A single table block: one sector across regions, or one region across sectors.
struct Group {
    Grouping kind = Grouping::by_sector;
    std::string label;

    static Group by_sector(std::string sector) { return {Grouping::by_sector, std::move(sector)}; }
    static Group by_region(std::string region) { return {Grouping::by_region, std::move(region)}; }

    bool operator==(const Group&) const = default;
};

/// Balanced panel of growth observations in canonical order: entities sorted
/// by label, then intervals by end year. Each entity's rows are contiguous.
class GrowthPanel {
public:
    GrowthPanel() = default;
    GrowthPanel(Grouping grouping, std::vector<GrowthObservation> rows);

    Grouping grouping() const { return grouping_; }
    std::span<const GrowthObservation> rows() const { return rows_; }
    const std::vector<std::string>& entities() const { return entities_; }
    const std::vector<int>& interval_years() const { return years_; }
    std::size_t entity_count() const { return entities_.size(); }
    /// Intervals per entity (T).
    std::size_t interval_count() const { return years_.size(); }
    std::size_t size() const { return rows_.size(); }

    std::span<const GrowthObservation> entity_rows(std::size_t entity) const;
    std::string entity_of(const GrowthObservation& row) const;

    /// One variable stacked in canonical order.
    Eigen::VectorXd column(Variable v) const;

    bool operator==(const GrowthPanel&) const = default;

private:
    Grouping grouping_ = Grouping::cell;
    std::vector<GrowthObservation> rows_;
    std::vector<std::string> entities_;
    std::vector<int> years_;
};

struct Ratios {
    double cq = 0.0;
    double fq = 0.0;
    double conc = 0.0;
};

/// cq = gfcf/gva of the cell; fq = cell outflow over the region's all_sectors
/// gva; conc = cell employment over the sector's employment summed over regions.
Ratios build_ratios(const PanelDataset& dataset, std::string_view region, std::string_view sector, int year);

/// Log-difference growth rates for every (region, sector) cell with the ratio
/// regressors attached at each interval's end year.
GrowthPanel growth_rates(const PanelDataset& dataset);

/// Restricts a cell-level panel to one table block and re-keys the entities.
/// by_region slices skip the all_sectors rows.
GrowthPanel select_group(const GrowthPanel& panel, const Group& group);

/// Within-entity differences across consecutive intervals, all variables.
GrowthPanel first_difference(const GrowthPanel& panel);

}  // namespace verdoorn
