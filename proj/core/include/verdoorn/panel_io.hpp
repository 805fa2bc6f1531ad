#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "verdoorn/errors.hpp"
#include "verdoorn/panel_model.hpp"

namespace verdoorn {

/// Required header of the level-panel file.
inline constexpr std::string_view kPanelHeader = "region,sector,year,gva,employment,gfcf,outflow";

/// Raised by parse_panel when the file parses but the panel is invalid.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Defect> defects);

    const std::vector<Defect>& defects() const noexcept { return defects_; }

private:
    std::vector<Defect> defects_;
};

/// Reads comma-delimited UTF-8 with the header above, one row per
/// (region, sector, year). Fields may be double-quoted. Throws ParseError
/// (with the 1-based line number) or ValidationError.
PanelDataset parse_panel(std::istream& in, std::string_view source = "<input>");
PanelDataset parse_panel(const std::filesystem::path& path);

/// Writes the same format; numbers use the shortest round-trip decimal form,
/// so parse_panel(write_panel(d)) reproduces d exactly.
void write_panel(std::ostream& out, const PanelDataset& dataset);
void write_panel(const std::filesystem::path& path, const PanelDataset& dataset);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

}  // namespace verdoorn
