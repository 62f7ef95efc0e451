#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "soilcolor/analysis.hpp"
#include "soilcolor/error.hpp"
#include "soilcolor/report.hpp"

using namespace soilcolor;

namespace {

const MunsellHue k25YR = parse_munsell_hue("2.5YR");
const MunsellHue k5YR = parse_munsell_hue("5YR");

std::vector<DeltaEMethod> all_methods() {
  return {DeltaEMethod::cie1976(), DeltaEMethod::cie1994(), DeltaEMethod::ciede2000(), DeltaEMethod::cmc()};
}

}  // namespace

TEST(Heatmap, AxesAndCenterline) {
  const HeatmapGrid grid = heatmap(bundled_chip_database(), k25YR, k5YR);
  ASSERT_EQ(grid.row_chips.size(), standard_page_layout().size());
  ASSERT_EQ(grid.col_chips.size(), grid.row_chips.size());
  EXPECT_EQ(format(grid.row_chips.front()), "2.5YR 8/1");
  EXPECT_EQ(format(grid.col_chips.back()), "5YR 2.5/2");
  EXPECT_EQ(grid.centerline.size(), grid.row_chips.size());
  for (const CenterlineCell& cell : grid.centerline) {
    EXPECT_EQ(grid.row_chips[cell.row].value, grid.col_chips[cell.col].value);
    EXPECT_EQ(grid.row_chips[cell.row].chroma, grid.col_chips[cell.col].chroma);
    EXPECT_EQ(cell.value, grid.values[cell.row][cell.col]);
  }
  const CenterlineStats s = centerline_stats(grid);
  EXPECT_LT(s.mean, off_centerline_mean(grid));
  EXPECT_NEAR(s.mean, 2.861, 1e-3);
  EXPECT_NEAR(s.min, 1.013, 1e-3);
  EXPECT_NEAR(s.max, 5.251, 1e-3);
}

TEST(Heatmap, Cie1976IsTransposeSymmetric) {
  const HeatmapGrid ab = heatmap(bundled_chip_database(), k25YR, k5YR, DeltaEMethod::cie1976());
  const HeatmapGrid ba = heatmap(bundled_chip_database(), k5YR, k25YR, DeltaEMethod::cie1976());
  for (std::size_t i = 0; i < ab.values.size(); ++i) {
    for (std::size_t j = 0; j < ab.values[i].size(); ++j) EXPECT_EQ(ab.values[i][j], ba.values[j][i]);
  }
}

TEST(Heatmap, AbsentPage) {
  EXPECT_THROW(heatmap(bundled_chip_database(), k25YR, parse_munsell_hue("5PB")), DomainError);
}

TEST(Heatmap, ReportFiles) {
  const HeatmapGrid grid = heatmap(bundled_chip_database(), k25YR, k5YR);
  std::ostringstream csv;
  write_heatmap_csv(csv, grid);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("reference\\sample,5YR 8/1,", 0), 0u);
  const auto meta = nlohmann::json::parse(heatmap_metadata_json(grid));
  EXPECT_EQ(meta["method"], "de2000");
  EXPECT_EQ(meta["centerline"].size(), grid.centerline.size());
  EXPECT_NEAR(meta["centerline_stats"]["mean"].get<double>(), centerline_stats(grid).mean, 1e-12);
}

TEST(Describe, PopulationAndSampleSpread) {
  const std::vector<double> v = {2, 4, 4, 4, 5, 5, 7, 9};
  const CenterlineStats s = describe(v);
  EXPECT_EQ(s.count, 8u);
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.stdev, 2.0);
  ASSERT_TRUE(s.sample_stdev.has_value());
  EXPECT_NEAR(*s.sample_stdev, std::sqrt(32.0 / 7.0), 1e-12);
  const std::vector<double> one = {3.0};
  EXPECT_FALSE(describe(one).sample_stdev.has_value());
  EXPECT_THROW(describe({}), DomainError);
}

TEST(Evaluate, ZeroNoiseIsPerfect) {
  const ChipDatabase& db = bundled_chip_database();
  const std::vector<CaptureSet> sets = {synthesize_capture_set(db, 0.0, {0, 0, 0}, 1, "clean")};
  const auto methods = all_methods();
  const AccuracyReport report = evaluate(sets, db, methods);
  ASSERT_EQ(report.entries.size(), 4u);
  for (const AccuracyEntry& e : report.entries) {
    EXPECT_EQ(e.total, db.size());
    EXPECT_EQ(e.hue_accuracy(), 100.0);
    EXPECT_EQ(e.hvc_accuracy(), 100.0);
  }
}

TEST(Evaluate, ThreadCountDoesNotChangeResults) {
  const ChipDatabase& db = bundled_chip_database();
  std::vector<CaptureSet> sets;
  for (int seed = 0; seed < 4; ++seed) {
    sets.push_back(synthesize_capture_set(db, 2.5, {0, 0, 0}, seed, "s" + std::to_string(seed)));
  }
  const auto methods = all_methods();
  EvaluateOptions serial, parallel;
  parallel.threads = 4;
  std::ostringstream a, b, ra, rb;
  const AccuracyReport one = evaluate(sets, db, methods, serial);
  const AccuracyReport many = evaluate(sets, db, methods, parallel);
  write_accuracy_csv(a, one);
  write_accuracy_csv(b, many);
  write_match_records_csv(ra, one);
  write_match_records_csv(rb, many);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(ra.str(), rb.str());
}

TEST(Evaluate, RejectsUnknownTruthAndRepeatedLabels) {
  const ChipDatabase& db = bundled_chip_database();
  CaptureSet odd("odd", "dev");
  odd.add({parse_munsell("5PB 5/6"), LabColor{50, 0, -20}});
  const auto methods = all_methods();
  EXPECT_THROW(evaluate(std::vector<CaptureSet>{odd}, db, methods), EvaluationError);
  const CaptureSet s = synthesize_capture_set(db, 0.0, {0, 0, 0}, 1, "same");
  EXPECT_THROW(evaluate(std::vector<CaptureSet>{s, s}, db, methods), EvaluationError);
}

TEST(Evaluate, PageRestriction) {
  const ChipDatabase& db = bundled_chip_database();
  const CaptureSet s = synthesize_capture_set(db, 0.0, {0, 0, 0}, 1, "clean");
  EvaluateOptions options;
  options.pages = {k5YR};
  const std::vector<DeltaEMethod> methods = {DeltaEMethod::ciede2000()};
  const AccuracyReport r = evaluate(std::vector<CaptureSet>{s}, db, methods, options);
  for (const ChipMatchRecord& rec : r.entries[0].records) EXPECT_EQ(rec.predicted.hue, k5YR);
}

TEST(Scatter, ExportsAndRoundTrips) {
  const ChipDatabase& db = bundled_chip_database();
  const ScatterExport xyz = scatter_export(db, ScatterSpace::XYZ);
  ASSERT_EQ(xyz.rows.size(), db.size());
  for (std::size_t i = 0; i < db.size(); ++i) {
    const auto& c = xyz.rows[i].coords;
    const LabColor back = xyz_to_lab({c[0], c[1], c[2]});
    EXPECT_NEAR(back.l, db.chips()[i].lab.l, 1e-9);
    EXPECT_NEAR(back.a, db.chips()[i].lab.a, 1e-9);
    EXPECT_NEAR(back.b, db.chips()[i].lab.b, 1e-9);
  }
  const ScatterExport rgb = scatter_export(db, ScatterSpace::RGB);
  int clamped = 0;
  for (const ScatterRow& r : rgb.rows) clamped += r.gamut_clamped;
  EXPECT_GT(clamped, 0);
  EXPECT_EQ(scatter_export(db, ScatterSpace::CMYK).axes.size(), 4u);
  EXPECT_EQ(parse_scatter_space("LaB"), ScatterSpace::LAB);
  EXPECT_THROW(parse_scatter_space("hsv"), ParseError);
}

TEST(Scatter, XyzMatchesRenotationRecord) {
  // 5YR 5/6: xyY under C adapted to D65.
  const ScatterExport xyz = scatter_export(bundled_chip_database(), ScatterSpace::XYZ);
  for (const ScatterRow& r : xyz.rows) {
    if (format(r.code) != "5YR 5/6") continue;
    EXPECT_NEAR(r.coords[0], 0.21912731961327175, 1e-12);
    EXPECT_NEAR(r.coords[1], 0.19269140787213393, 1e-12);
    EXPECT_NEAR(r.coords[2], 0.08286843054997794, 1e-12);
  }
}

TEST(Clumping, LabSeparatesPagesBetterThanXyz) {
  const ChipDatabase& db = bundled_chip_database();
  const ClumpingIndex lab = clumping_index(scatter_export(db, ScatterSpace::LAB));
  const ClumpingIndex xyz = clumping_index(scatter_export(db, ScatterSpace::XYZ));
  EXPECT_GT(lab.overall, xyz.overall);
  EXPECT_EQ(lab.per_page.size(), 7u);
}

TEST(Clumping, NeedsTwoPages) {
  const ChipDatabase one({{parse_munsell("5YR 5/6"), {50, 10, 20}}, {parse_munsell("5YR 4/6"), {40, 10, 20}}});
  EXPECT_THROW(clumping_index(scatter_export(one, ScatterSpace::LAB)), DomainError);
  const ChipDatabase same({{parse_munsell("5YR 5/6"), {50, 10, 20}}, {parse_munsell("10YR 5/6"), {50, 10, 20}}});
  EXPECT_EQ(clumping_index(scatter_export(same, ScatterSpace::LAB)).overall, 0.0);
}

TEST(DeviceOffsets, RecoversConstantShift) {
  const ChipDatabase& db = bundled_chip_database();
  const std::vector<CaptureSet> sets = {synthesize_capture_set(db, 0.0, {7.4, -1.0, 0.5}, 1, "shifted", "cam")};
  const DeviceOffsetReport report = device_offsets(sets, db);
  ASSERT_EQ(report.devices.size(), 1u);
  EXPECT_NEAR(report.devices[0].mean[0], 7.4, 1e-6);
  EXPECT_NEAR(report.devices[0].mean[1], -1.0, 1e-6);
  EXPECT_NEAR(report.devices[0].mean[2], 0.5, 1e-6);
  EXPECT_NEAR(report.devices[0].stdev[0], 0.0, 1e-9);
}

TEST(DeviceOffsets, SelfComparisonIsZero) {
  const CaptureSet s = synthesize_capture_set(bundled_chip_database(), 2.0, {0, 0, 0}, 3, "a", "cam");
  const DeviceOffsetReport report = device_offsets(std::vector<CaptureSet>{s}, s);
  for (int ch = 0; ch < 3; ++ch) {
    EXPECT_EQ(report.devices[0].mean[ch], 0.0);
    EXPECT_EQ(report.devices[0].stdev[ch], 0.0);
  }
}

TEST(DeviceOffsets, InventoryMismatch) {
  CaptureSet a("a", "x"), b("b", "y");
  a.add({parse_munsell("5YR 5/6"), LabColor{50, 10, 20}});
  b.add({parse_munsell("5YR 4/6"), LabColor{40, 10, 20}});
  EXPECT_THROW(device_offsets(std::vector<CaptureSet>{a}, b), EvaluationError);
}
