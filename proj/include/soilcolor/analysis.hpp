#pragma once

// Chart-level analyses: cross-hue difference heatmaps, capture-set accuracy,
// per-space scatter exports with a separation ("clumping") index, and
// per-device Lab offsets.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soilcolor/chip_database.hpp"
#include "soilcolor/dataset.hpp"
#include "soilcolor/delta_e.hpp"
#include "soilcolor/munsell.hpp"

namespace soilcolor {

// ---------------------------------------------------------------------------
// Heatmaps

struct CenterlineCell {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

// values[i][j] is the difference with row chip i as reference and column
// chip j as sample. Rows and columns are ordered by value descending, then
// chroma ascending. The centerline pairs chips with equal value and chroma.
struct HeatmapGrid {
  MunsellHue page_a;
  MunsellHue page_b;
  std::vector<MunsellCode> row_chips;
  std::vector<MunsellCode> col_chips;
  std::vector<std::vector<double>> values;
  DeltaEMethod method;
  std::vector<CenterlineCell> centerline;
};

// Throws DomainError when either page is absent from the database.
HeatmapGrid heatmap(const ChipDatabase& db, const MunsellHue& page_a, const MunsellHue& page_b,
                    const DeltaEMethod& method = {});

struct CenterlineStats {
  std::size_t count = 0;
  double mean = 0.0;
  double stdev = 0.0;  // population
  std::optional<double> sample_stdev;  // n - 1 denominator, unset for n < 2
  double min = 0.0;
  double max = 0.0;
};

// Summary statistics of a non-empty sample. Throws DomainError when empty.
CenterlineStats describe(std::span<const double> values);
CenterlineStats centerline_stats(const HeatmapGrid& grid);
// Mean over every cell that is not on the centerline. Throws DomainError
// when no such cell exists.
double off_centerline_mean(const HeatmapGrid& grid);

// ---------------------------------------------------------------------------
// Accuracy evaluation

struct ChipMatchRecord {
  MunsellCode truth;
  MunsellCode predicted;
  double delta_e = 0.0;
  bool hue_correct = false;
  bool hvc_correct = false;
};

struct AccuracyEntry {
  std::string set_label;
  std::string device;
  DeltaEMethod method;
  std::size_t total = 0;
  std::size_t hue_correct = 0;
  std::size_t hvc_correct = 0;
  std::vector<ChipMatchRecord> records;

  double hue_accuracy() const noexcept { return total == 0 ? 0.0 : 100.0 * hue_correct / total; }
  double hvc_accuracy() const noexcept { return total == 0 ? 0.0 : 100.0 * hvc_correct / total; }
};

struct AccuracyReport {
  std::vector<std::string> set_labels;
  std::vector<DeltaEMethod> methods;
  // Method-major: entries[m * set_labels.size() + s].
  std::vector<AccuracyEntry> entries;

  const AccuracyEntry& at(std::size_t method_index, std::size_t set_index) const {
    return entries.at(method_index * set_labels.size() + set_index);
  }
};

struct EvaluateOptions {
  // Candidate pages; pages missing from the database are ignored.
  std::vector<MunsellHue> pages{default_pages().begin(), default_pages().end()};
  IlluminantName illuminant = IlluminantName::D65;
  // Worker threads; results do not depend on this.
  unsigned threads = 1;
};

// Matches every observation of every set with every method. Throws
// EvaluationError when a truth code is not in the database or set labels
// repeat.
AccuracyReport evaluate(std::span<const CaptureSet> sets, const ChipDatabase& db,
                        std::span<const DeltaEMethod> methods, const EvaluateOptions& options = {});

// ---------------------------------------------------------------------------
// Scatter exports

enum class ScatterSpace { RGB, CMYK, XYZ, LCH, LAB };

std::string_view to_string(ScatterSpace space) noexcept;
// Case-insensitive "rgb", "cmyk", "xyz", "lch", "lab". Throws ParseError.
ScatterSpace parse_scatter_space(std::string_view text);

struct ScatterRow {
  MunsellCode code;
  std::vector<double> coords;
  // Set for RGB/CMYK rows whose chip lies outside the sRGB gamut.
  bool gamut_clamped = false;
};

struct ScatterExport {
  ScatterSpace space = ScatterSpace::LAB;
  std::vector<std::string> axes;
  std::vector<ScatterRow> rows;
};

// One row per chip in canonical order. RGB is 8-bit (0-255), CMYK in
// [0, 1], XYZ with Y of the white = 1.
ScatterExport scatter_export(const ChipDatabase& db, ScatterSpace space);

struct ClumpingIndex {
  // Mean distance from each chip of the page to the nearest chip of any
  // other page, divided by `range`.
  std::map<MunsellHue, double, CanonicalLess> per_page;
  // Same quantity averaged over all chips.
  double overall = 0.0;
  // Diagonal of the export's bounding box.
  double range = 0.0;
};

// Larger values mean better separated hue pages. Throws DomainError for
// exports covering fewer than two pages. Coincident points give 0.
ClumpingIndex clumping_index(const ScatterExport& exported);

// ---------------------------------------------------------------------------
// Device offsets

struct ChipDelta {
  MunsellCode code;
  std::array<double, 3> delta{};  // observed - reference, per L, a, b
};

struct DeviceOffsets {
  std::string device;
  std::string set_label;
  std::array<double, 3> mean{};
  std::array<double, 3> stdev{};  // population
  std::vector<ChipDelta> deltas;
};

struct DeviceOffsetReport {
  std::vector<DeviceOffsets> devices;
};

// Per set: mean and spread of observed minus reference Lab over the chips.
// Against a capture set the inventories must match exactly; against a
// database every observed code must exist. Throws EvaluationError listing
// the missing codes.
DeviceOffsetReport device_offsets(std::span<const CaptureSet> sets, const CaptureSet& reference);
DeviceOffsetReport device_offsets(std::span<const CaptureSet> sets, const ChipDatabase& reference);

}  // namespace soilcolor
