#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "verdoorn/panel_model.hpp"

namespace fixtures {

inline const std::vector<std::string> kRegions{"Norte", "Centro", "Lisboa e Vale do Tejo", "Alentejo", "Algarve"};
inline const std::vector<std::string> kSectors{"agriculture", "industry", "manufacturing", "other_industry",
                                               "services", "all_sectors"};

/// Complete panel with smooth positive levels; every cell distinct.
inline std::vector<verdoorn::LevelObservation> level_rows(const std::vector<std::string>& regions,
                                                          const std::vector<std::string>& sectors, int first_year,
                                                          int years) {
    std::vector<verdoorn::LevelObservation> rows;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        for (std::size_t s = 0; s < sectors.size(); ++s) {
            for (int y = 0; y < years; ++y) {
                const double base = 100.0 + 10.0 * r + 3.0 * s;
                rows.push_back({regions[r], sectors[s], first_year + y,
                                base * std::exp(0.03 * y + 0.001 * r * y + 0.002 * s * y * y),
                                50.0 + 5.0 * r + s + 0.7 * y + 0.05 * r * y * y, 0.2 * base + y + s,
                                0.4 * base + 2.0 * r + 0.5 * y});
            }
        }
    }
    return rows;
}

inline verdoorn::PanelDataset full_panel() {
    return verdoorn::PanelDataset(level_rows(kRegions, kSectors, 1995, 5));
}

}  // namespace fixtures
