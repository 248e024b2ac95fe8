#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gausscrit/errors.hpp"
#include "gausscrit/scan.hpp"
#include "reference.hpp"

using namespace gausscrit;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::string records_csv(const std::vector<ScanRecord>& records) {
    std::ostringstream out;
    write_records_csv(records, out);
    return out.str();
}

}  // namespace

TEST(Axis, ParseLinearAndLog) {
    const auto lin = parse_axis("0.01:1:50");
    EXPECT_EQ(lin.min, 0.01);
    EXPECT_EQ(lin.max, 1.0);
    EXPECT_EQ(lin.count, 50);
    EXPECT_FALSE(lin.log);
    const auto lg = parse_axis("1:1000:100:log");
    EXPECT_TRUE(lg.log);
    EXPECT_FALSE(parse_axis("1:2:3:linear").log);
}

TEST(Axis, ParseErrors) {
    EXPECT_THROW(parse_axis("1:2"), ValidationError);
    EXPECT_THROW(parse_axis("a:2:3"), ValidationError);
    EXPECT_THROW(parse_axis("1:2:x"), ValidationError);
    EXPECT_THROW(parse_axis("1:2:3:cubic"), ValidationError);
    EXPECT_THROW(parse_axis("2:1:3"), ValidationError);
    EXPECT_THROW(parse_axis("0:1:3:log"), ValidationError);
    EXPECT_THROW(parse_axis("0:1:1"), ValidationError);
}

TEST(Axis, ValuesHitEndpointsExactly) {
    const auto lin = AxisSpec{0.0, 0.995, 200, false}.values();
    ASSERT_EQ(lin.size(), 200u);
    EXPECT_EQ(lin.front(), 0.0);
    EXPECT_EQ(lin.back(), 0.995);
    const auto lg = AxisSpec{1.0, 1000.0, 4, true}.values();
    EXPECT_EQ(lg.front(), 1.0);
    EXPECT_NEAR(lg[1], 10.0, 1e-12);
    EXPECT_NEAR(lg[2], 100.0, 1e-10);
    EXPECT_EQ(lg.back(), 1000.0);
}

TEST(Grid, SmallExample) {
    GridSpec spec;
    spec.x = {0.5, 1.0, 2, false};
    spec.y = {0.0, 0.5, 2, false};
    const auto records = run_grid(spec);
    ASSERT_EQ(records.size(), 4u);
    // x fastest.
    EXPECT_EQ(records[0].p, 0.5);
    EXPECT_EQ(records[1].p, 1.0);
    EXPECT_EQ(records[2].tanh_r, 0.5);
    for (int i : {0, 1}) {
        EXPECT_EQ(records[i].tanh_r, 0.0);
        EXPECT_NEAR(records[i].discord, 0.0, 1e-12);
        EXPECT_TRUE(records[i].separable);
    }
    for (const auto& rec : records) {
        EXPECT_EQ(rec.tanh_discord, std::tanh(rec.discord));
        EXPECT_NEAR(rec.a, std::exp(rec.r) * std::pow(rec.p, -0.25), 1e-12 * rec.a);
        EXPECT_NEAR(rec.r, std::atanh(rec.tanh_r), 1e-15);
    }
}

TEST(Grid, SeparabilityFlipsOnClosedFormCurve) {
    GridSpec spec;
    spec.threads = 2;
    const auto records = run_grid(spec);
    ASSERT_EQ(records.size(), 40000u);
    int bell = 0;
    int small_discord_violation = 0;
    int large_discord_no_violation = 0;
    for (const auto& rec : records) {
        const double margin = std::exp(-2 * rec.r) - std::sqrt(rec.p);
        EXPECT_EQ(rec.separable, margin >= 0.0);
        EXPECT_EQ(rec.sep_margin, margin);
        if (rec.bell_violated) {
            ++bell;
            EXPECT_FALSE(rec.separable);
        }
        if (rec.discord < 1e-12) {
            EXPECT_TRUE(rec.separable);
        }
        small_discord_violation += rec.discord < 0.1 && rec.bell_violated;
        large_discord_no_violation += rec.discord > 2 && !rec.bell_violated;
    }
    EXPECT_GT(bell, 0);
    EXPECT_GT(small_discord_violation, 0);
    EXPECT_GT(large_discord_no_violation, 0);
}

TEST(Grid, AxesPlaneMarksUnphysicalCells) {
    GridSpec spec;
    spec.plane = Plane::Axes;
    spec.x = {0.5, 4.0, 8, false};
    spec.y = {0.25, 4.0, 8, false};
    const auto records = run_grid(spec);
    int unphysical = 0;
    for (const auto& rec : records) {
        const bool expected = rec.a >= rec.b && rec.a * rec.b >= 1.0;
        EXPECT_EQ(rec.physical, expected) << rec.a << " " << rec.b;
        unphysical += !rec.physical;
    }
    EXPECT_GT(unphysical, 0);
    const auto csv = lines_of(records_csv(records));
    int nan_rows = 0;
    for (std::size_t i = 1; i < csv.size(); ++i) {
        if (csv[i].ends_with(",nan,nan,nan,nan,nan,nan")) {
            ++nan_rows;
        }
    }
    EXPECT_EQ(nan_rows, unphysical);
}

TEST(Grid, BoundaryStateCellInAxesPlane) {
    GridSpec spec;
    spec.plane = Plane::Axes;
    spec.x = {1.0, std::exp(2.0), 3, false};
    spec.y = {0.5, 1.0, 3, false};
    const auto records = run_grid(spec);
    const auto& cell = records.back();
    EXPECT_EQ(cell.a, std::exp(2.0));
    EXPECT_EQ(cell.b, 1.0);
    EXPECT_TRUE(cell.physical);
    EXPECT_TRUE(cell.separable);
    EXPECT_EQ(cell.sep_margin, 0.0);
    EXPECT_GT(cell.discord, 0.0);
    EXPECT_NEAR(cell.discord, reference::kDiscordR1PExpM4, 1e-12);
}

TEST(Grid, IdenticalAcrossThreadCounts) {
    GridSpec spec;
    spec.x = {0.01, 1.0, 60, false};
    spec.y = {0.0, 0.99, 60, false};
    spec.threads = 1;
    const auto one = records_csv(run_grid(spec));
    spec.threads = 4;
    const auto four = records_csv(run_grid(spec));
    spec.threads = 7;
    const auto seven = records_csv(run_grid(spec));
    EXPECT_EQ(one, four);
    EXPECT_EQ(one, seven);
}

TEST(Grid, RejectsInvalidSpec) {
    GridSpec spec;
    spec.y = {0.0, 1.0, 10, false};
    EXPECT_THROW(run_grid(spec), ValidationError);
    spec.y = {0.0, 0.9, 10, false};
    spec.x = {0.0, 1.0, 10, false};
    EXPECT_THROW(run_grid(spec), ValidationError);
    spec.x = {0.1, 1.5, 10, false};
    EXPECT_THROW(run_grid(spec), ValidationError);
    spec.x = {0.1, 1.0, 1, false};
    EXPECT_THROW(run_grid(spec), ValidationError);
}

TEST(Csv, HeaderAndSingleRow) {
    ScanRecord rec;
    rec.p = 0.5;
    rec.r = 1.0;
    rec.tanh_r = std::tanh(1.0);
    rec.phi = 0.0;
    rec.a = 3.0;
    rec.b = 1.0 / 3.0;
    rec.discord = 1.25;
    rec.tanh_discord = std::tanh(1.25);
    rec.bell = 2.5;
    rec.bell_violated = true;
    rec.sep_margin = -0.57;
    rec.separable = false;
    const auto text = records_csv({rec});
    const auto lines = lines_of(text);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], kRecordHeader);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(lines[1], "0.5,1,0.761594156,0,3,0.333333333,1.25,0.84828364,2.5,1,-0.57,0");
}

TEST(Csv, GridRowFromVacuumColumn) {
    GridSpec spec;
    spec.x = {0.5, 1.0, 2, false};
    spec.y = {0.0, 0.5, 2, false};
    const auto lines = lines_of(records_csv(run_grid(spec)));
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_TRUE(lines[2].starts_with("1,0,0,0,1,1,0,0,2,0,0,1")) << lines[2];
}

TEST(Csv, NumberFormatting) {
    EXPECT_EQ(format_real(std::numbers::pi), "3.14159265");
    EXPECT_EQ(format_real(1e-20), "1e-20");
    EXPECT_EQ(format_real(0.0), "0");
    EXPECT_EQ(format_real(std::nan("")), "nan");
    EXPECT_EQ(format_real(2.0), "2");
}

TEST(Csv, RejectsEmptyInput) {
    std::ostringstream out;
    EXPECT_THROW(write_records_csv(std::vector<ScanRecord>{}, out), ValidationError);
    EXPECT_THROW(write_curve_csv(BoundaryCurve{}, out), ValidationError);
}

TEST(Csv, UnwritablePathNamesDestination) {
    GridSpec spec;
    spec.x = {0.5, 1.0, 2, false};
    spec.y = {0.0, 0.5, 2, false};
    const auto records = run_grid(spec);
    const std::filesystem::path bad = "/nonexistent-dir/sub/out.csv";
    try {
        write_records_csv(records, bad);
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos);
    }
}

TEST(Csv, FileRoundTrip) {
    GridSpec spec;
    spec.x = {0.5, 1.0, 3, false};
    spec.y = {0.0, 0.5, 3, false};
    const auto records = run_grid(spec);
    const auto path = std::filesystem::temp_directory_path() / "gausscrit_scan_test.csv";
    write_records_csv(records, path);
    std::ifstream in(path, std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(text, records_csv(records));
    std::filesystem::remove(path);
}

TEST(Names, RoundTrip) {
    for (auto k : {CriterionKind::Bell, CriterionKind::Separability, CriterionKind::DiscordLevel}) {
        EXPECT_EQ(parse_criterion(to_string(k)), k);
    }
    for (auto s : {SweepAxis::TanhR, SweepAxis::Purity, SweepAxis::A, SweepAxis::B}) {
        EXPECT_EQ(parse_sweep(to_string(s)), s);
    }
    EXPECT_THROW(parse_criterion("entropy"), ValidationError);
    EXPECT_THROW(parse_sweep("q"), ValidationError);
}

TEST(Boundary, SeparabilityMatchesClosedForm) {
    BoundarySpec spec;
    spec.kind = CriterionKind::Separability;
    spec.sweep = SweepAxis::TanhR;
    spec.range = {0.0, 0.99, 100, false};
    const auto curve = bisect_boundary(spec);
    ASSERT_EQ(curve.points.size(), 100u);
    EXPECT_TRUE(std::isnan(curve.level));
    for (const auto& pt : curve.points) {
        if (pt.tanh_r == 0.0) {
            // exp(-2r) = sqrt(p) at r = 0 needs p = 1, which is the edge.
            EXPECT_NEAR(pt.p, 1.0, 1e-10);
            continue;
        }
        ASSERT_TRUE(pt.crossing) << pt.tanh_r;
        EXPECT_NEAR(pt.p, std::exp(-4.0 * pt.r), 1e-10) << pt.tanh_r;
        EXPECT_LE(std::abs(pt.margin), 1e-10);
    }
}

TEST(Boundary, SeparabilityAlongPurity) {
    BoundarySpec spec;
    spec.kind = CriterionKind::Separability;
    spec.sweep = SweepAxis::Purity;
    spec.range = {0.01, 0.9, 20, false};
    for (const auto& pt : bisect_boundary(spec).points) {
        ASSERT_TRUE(pt.crossing);
        EXPECT_NEAR(pt.r, -0.25 * std::log(pt.p), 1e-9);
    }
}

TEST(Boundary, BellThresholdAtUnitSqueezing) {
    BoundarySpec spec;
    spec.kind = CriterionKind::Bell;
    spec.sweep = SweepAxis::TanhR;
    spec.range = {std::tanh(0.5), std::tanh(1.0), 2, false};
    const auto curve = bisect_boundary(spec);
    const auto& pt = curve.points.back();
    ASSERT_TRUE(pt.crossing);
    EXPECT_NEAR(pt.r, 1.0, 1e-15);
    EXPECT_NEAR(pt.p, 0.5596540052905209, 1e-9);
    EXPECT_LE(std::abs(pt.margin), spec.tol);
}

TEST(Boundary, BellInAxesPlaneFollowsPowerLaw) {
    BoundarySpec spec;
    spec.kind = CriterionKind::Bell;
    spec.sweep = SweepAxis::A;
    spec.range = {100.0, 1000.0, 2, true};
    const auto curve = bisect_boundary(spec);
    for (const auto& pt : curve.points) {
        ASSERT_TRUE(pt.crossing);
        const double law = std::pow(std::numbers::pi / (8 * pt.a * pt.a * pt.a), 0.2);
        EXPECT_LT(std::abs(pt.b / law - 1.0), 0.01) << pt.a;
    }
}

TEST(Boundary, DiscordLevelPoints) {
    BoundarySpec spec;
    spec.kind = CriterionKind::DiscordLevel;
    spec.level = 0.5;
    spec.sweep = SweepAxis::TanhR;
    spec.range = {0.3, 0.95, 30, false};
    const auto curve = bisect_boundary(spec);
    EXPECT_EQ(curve.level, 0.5);
    int crossings = 0;
    for (const auto& pt : curve.points) {
        if (!pt.crossing) {
            continue;
        }
        ++crossings;
        EXPECT_LE(std::abs(discord(StateParams(pt.r, 0.0, pt.p)) - 0.5), 1e-10);
    }
    EXPECT_GT(crossings, 0);
}

TEST(Boundary, NoCrossingIsReportedNotThrown) {
    BoundarySpec spec;
    spec.kind = CriterionKind::DiscordLevel;
    spec.level = 5.0;
    spec.sweep = SweepAxis::TanhR;
    spec.range = {0.0, 0.2, 3, false};
    const auto curve = bisect_boundary(spec);
    for (const auto& pt : curve.points) {
        EXPECT_FALSE(pt.crossing);
        EXPECT_TRUE(std::isnan(pt.p));
    }
    std::ostringstream out;
    write_curve_csv(curve, out);
    const auto lines = lines_of(out.str());
    EXPECT_EQ(lines[0], kBoundaryHeader);
    EXPECT_TRUE(lines[1].ends_with(",0"));
}

TEST(Boundary, RejectsInvalidSpec) {
    BoundarySpec spec;
    spec.tol = 0.0;
    EXPECT_THROW(bisect_boundary(spec), ValidationError);
    spec.tol = 1e-10;
    spec.kind = CriterionKind::DiscordLevel;
    spec.level = -1.0;
    EXPECT_THROW(bisect_boundary(spec), ValidationError);
    spec.kind = CriterionKind::Bell;
    spec.range = {0.0, 1.0, 10, false};
    EXPECT_THROW(bisect_boundary(spec), ValidationError);
}

TEST(Boundary, IdenticalAcrossThreadCounts) {
    BoundarySpec spec;
    spec.kind = CriterionKind::Bell;
    spec.range = {0.5, 0.99, 40, false};
    spec.threads = 1;
    std::ostringstream a;
    write_curve_csv(bisect_boundary(spec), a);
    spec.threads = 4;
    std::ostringstream b;
    write_curve_csv(bisect_boundary(spec), b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Margin, Definitions) {
    const StateParams params(1.0, 0.0, 0.3);
    EXPECT_EQ(criterion_margin(CriterionKind::Bell, 0.0, params), bell_expectation(params) - 2.0);
    EXPECT_EQ(criterion_margin(CriterionKind::Separability, 0.0, params), is_separable_closed(params).margin);
    EXPECT_EQ(criterion_margin(CriterionKind::DiscordLevel, 0.2, params), discord(params) - 0.2);
}
