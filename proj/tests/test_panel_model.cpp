#include <doctest.h>

#include <algorithm>
#include <map>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "verdoorn/errors.hpp"
#include "verdoorn/panel_model.hpp"

using namespace verdoorn;

namespace {

bool has_defect(const std::vector<Defect>& defects, DefectKind kind, const std::string& needle = "") {
    return std::any_of(defects.begin(), defects.end(), [&](const Defect& d) {
        return d.kind == kind && d.message.find(needle) != std::string::npos;
    });
}

PanelDataset two_by_one(double gva0, double gva1, double emp0, double emp1) {
    std::vector<LevelObservation> rows{
        {"A", "industry", 2000, gva0, emp0, 10, 5},        {"A", "industry", 2001, gva1, emp1, 12, 6},
        {"A", "all_sectors", 2000, 2 * gva0, 2 * emp0, 20, 9}, {"A", "all_sectors", 2001, 2 * gva1, 2 * emp1, 22, 11},
    };
    return PanelDataset(rows);
}

}  // namespace

TEST_CASE("validate: complete 5 x 6 x 5 panel has no defects") {
    const auto dataset = fixtures::full_panel();
    CHECK(dataset.regions().size() == 5);
    CHECK(dataset.sectors().size() == 6);
    CHECK(dataset.years().size() == 5);
    CHECK(validate(dataset).empty());
}

TEST_CASE("validate: one missing cell is named") {
    auto rows = fixtures::level_rows(fixtures::kRegions, fixtures::kSectors, 1995, 5);
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const LevelObservation& o) {
                                  return o.region == "Centro" && o.sector == "services" && o.year == 1997;
                              }),
               rows.end());
    const auto defects = validate(PanelDataset(rows));
    REQUIRE(defects.size() == 1);
    CHECK(defects[0].kind == DefectKind::MissingCell);
    CHECK(defects[0].message.find("(Centro, services, 1997)") != std::string::npos);
}

TEST_CASE("validate: non-positive employment") {
    auto rows = fixtures::level_rows(fixtures::kRegions, fixtures::kSectors, 1995, 5);
    rows[7].employment = 0.0;
    const auto defects = validate(PanelDataset(rows));
    REQUIRE(defects.size() == 1);
    CHECK(defects[0].kind == DefectKind::NonPositiveLevel);
}

TEST_CASE("validate: other defect kinds") {
    auto rows = fixtures::level_rows({"A", "B"}, {"x", "all_sectors"}, 2000, 3);
    SUBCASE("duplicate") {
        rows.push_back(rows[2]);
        CHECK(has_defect(validate(PanelDataset(rows)), DefectKind::DuplicateCell, "(A, x, 2002)"));
    }
    SUBCASE("negative gfcf") {
        rows[0].gfcf = -1.0;
        CHECK(has_defect(validate(PanelDataset(rows)), DefectKind::NegativeLevel));
    }
    SUBCASE("non-finite") {
        rows[0].outflow = std::nan("");
        CHECK(has_defect(validate(PanelDataset(rows)), DefectKind::NonFiniteValue));
    }
    SUBCASE("gap in years") {
        for (auto& r : rows) {
            if (r.year == 2002) r.year = 2005;
        }
        CHECK(has_defect(validate(PanelDataset(rows)), DefectKind::NonContiguousYears));
    }
    SUBCASE("single year") {
        std::erase_if(rows, [](const LevelObservation& o) { return o.year != 2000; });
        CHECK(has_defect(validate(PanelDataset(rows)), DefectKind::TooFewYears));
    }
    SUBCASE("no all_sectors rows") {
        std::erase_if(rows, [](const LevelObservation& o) { return o.sector == "all_sectors"; });
        CHECK(has_defect(validate(PanelDataset(rows)), DefectKind::MissingTotalSector));
    }
    SUBCASE("empty") {
        CHECK(has_defect(validate(PanelDataset{}), DefectKind::Empty));
    }
}

TEST_CASE("growth_rates: log differences") {
    SUBCASE("no growth") {
        const auto panel = growth_rates(two_by_one(100, 100, 50, 50));
        const auto row = select_group(panel, Group::by_sector("industry")).rows()[0];
        CHECK(row.q == 0.0);
        CHECK(row.p == 0.0);
    }
    SUBCASE("ten percent output growth") {
        const auto panel = growth_rates(two_by_one(100, 110, 50, 50));
        const auto row = select_group(panel, Group::by_sector("industry")).rows()[0];
        CHECK(row.q == doctest::Approx(0.09531017980432486).epsilon(1e-15));
    }
    SUBCASE("equal output and employment growth") {
        const auto panel = growth_rates(two_by_one(100, 110, 50, 55));
        const auto row = select_group(panel, Group::by_sector("industry")).rows()[0];
        CHECK(std::fabs(row.p) < 1e-15);
    }
    SUBCASE("non-positive levels are InvalidLevels") {
        try {
            growth_rates(two_by_one(100, -1, 50, 55));
            FAIL("expected InvalidLevels");
        } catch (const Error& err) {
            CHECK(err.kind() == ErrorKind::InvalidLevels);
        }
    }
}

TEST_CASE("growth_rates: shape, identities and shares") {
    const auto dataset = fixtures::full_panel();
    const auto panel = growth_rates(dataset);
    CHECK(panel.size() == 5 * 6 * 4);
    CHECK(panel.interval_count() == 4);
    CHECK(panel.interval_years() == std::vector<int>{1996, 1997, 1998, 1999});

    std::map<std::pair<std::string, int>, double> share_sum;
    for (const auto& row : panel.rows()) {
        CHECK(row.p == row.q - row.e);
        CHECK(row.conc > 0.0);
        CHECK(row.conc <= 1.0);
        share_sum[{row.sector, row.interval_end_year}] += row.conc;
    }
    for (const auto& [key, sum] : share_sum) CHECK(std::fabs(sum - 1.0) < 1e-10);
}

TEST_CASE("growth_rates: rescaling an entity's gva leaves q unchanged") {
    auto rows = fixtures::level_rows(fixtures::kRegions, fixtures::kSectors, 1995, 5);
    const auto before = select_group(growth_rates(PanelDataset(rows)), Group::by_sector("industry"));
    for (auto& r : rows) {
        if (r.region == "Alentejo" && r.sector == "industry") r.gva *= 37.5;
    }
    const auto after = select_group(growth_rates(PanelDataset(rows)), Group::by_sector("industry"));
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(after.rows()[i].q == doctest::Approx(before.rows()[i].q).epsilon(1e-12));
    }
}

TEST_CASE("build_ratios") {
    SUBCASE("direct ratios") {
        std::vector<LevelObservation> rows{
            {"A", "x", 2000, 100, 30, 20, 10}, {"A", "all_sectors", 2000, 400, 90, 50, 40},
            {"B", "x", 2000, 50, 70, 5, 2},    {"B", "all_sectors", 2000, 200, 80, 10, 4},
        };
        const PanelDataset dataset(rows);
        const auto a = build_ratios(dataset, "A", "x", 2000);
        CHECK(a.cq == doctest::Approx(0.2));
        CHECK(a.fq == doctest::Approx(10.0 / 400.0));
        CHECK(a.conc == doctest::Approx(0.3));
        const auto b = build_ratios(dataset, "B", "x", 2000);
        CHECK(b.conc == doctest::Approx(0.7));
        CHECK(a.conc + b.conc == doctest::Approx(1.0));
        CHECK_THROWS_AS(build_ratios(dataset, "C", "x", 2000), Error);
    }
    SUBCASE("single region is the nation") {
        const PanelDataset dataset(fixtures::level_rows({"Only"}, {"x", "y", "all_sectors"}, 2000, 3));
        for (const auto& row : growth_rates(dataset).rows()) CHECK(row.conc == 1.0);
    }
    SUBCASE("zero all-sectors gva") {
        std::vector<LevelObservation> rows{{"A", "x", 2000, 100, 30, 20, 10}, {"A", "all_sectors", 2000, 0, 90, 50, 40}};
        try {
            build_ratios(PanelDataset(rows), "A", "x", 2000);
            FAIL("expected ZeroDenominator");
        } catch (const Error& err) {
            CHECK(err.kind() == ErrorKind::ZeroDenominator);
        }
    }
}

TEST_CASE("select_group keys entities by grouping") {
    const auto panel = growth_rates(fixtures::full_panel());
    const auto sector = select_group(panel, Group::by_sector("services"));
    CHECK(sector.entity_count() == 5);
    CHECK(sector.grouping() == Grouping::by_sector);
    const auto region = select_group(panel, Group::by_region("Norte"));
    // all_sectors is not one of a region's sectors.
    CHECK(region.entity_count() == 5);
    CHECK(std::find(region.entities().begin(), region.entities().end(), "all_sectors") == region.entities().end());
    CHECK(select_group(panel, Group::by_sector("nope")).size() == 0);
}

TEST_CASE("GrowthPanel rejects unbalanced rows") {
    std::vector<GrowthObservation> rows(3);
    rows[0] = {"A", "s", 2001};
    rows[1] = {"A", "s", 2002};
    rows[2] = {"B", "s", 2001};
    CHECK_THROWS_AS(GrowthPanel(Grouping::by_sector, rows), Error);
}

TEST_CASE("first_difference") {
    auto make = [](std::vector<double> p) {
        std::vector<GrowthObservation> rows;
        for (std::size_t t = 0; t < p.size(); ++t) {
            GrowthObservation row{"A", "s", 2001 + static_cast<int>(t)};
            row.p = p[t];
            rows.push_back(row);
        }
        return GrowthPanel(Grouping::by_sector, rows);
    };
    SUBCASE("constant series") {
        const auto d = first_difference(make({0.02, 0.02, 0.02}));
        REQUIRE(d.size() == 2);
        CHECK(d.rows()[0].p == 0.0);
        CHECK(d.rows()[1].p == 0.0);
    }
    SUBCASE("arithmetic") {
        const auto d = first_difference(make({0.01, 0.03, 0.02}));
        CHECK(d.rows()[0].p == doctest::Approx(0.02));
        CHECK(d.rows()[1].p == doctest::Approx(-0.01));
        CHECK(d.interval_years() == std::vector<int>{2002, 2003});
    }
    SUBCASE("too short") {
        CHECK_THROWS_AS(first_difference(make({0.01})), Error);
    }
}

TEST_CASE("first_difference annihilates entity constants and keeps p = q - e") {
    synth::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto panel = select_group(oracle::random_panel(rng, 4 + trial % 4, 3 + trial % 3), Group::by_sector("s"));
        std::vector<GrowthObservation> shifted(panel.rows().begin(), panel.rows().end());
        std::map<std::string, double> offset;
        for (const auto& e : panel.entities()) offset[e] = rng.uniform(-10.0, 10.0);
        for (auto& row : shifted) row.p += offset[row.region];
        const auto a = first_difference(panel);
        const auto b = first_difference(GrowthPanel(Grouping::by_sector, shifted));
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::fabs(a.rows()[i].p - b.rows()[i].p) < 1e-13);
            CHECK(std::fabs(a.rows()[i].p - (a.rows()[i].q - a.rows()[i].e)) < 1e-15);
        }
    }
}
