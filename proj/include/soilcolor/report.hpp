#pragma once

// Text serializations of the analysis results. Every writer is a pure
// function of its input, so identical inputs give byte-identical files.

#include <ostream>
#include <string>

#include "soilcolor/analysis.hpp"

namespace soilcolor {

// Matrix CSV: header "reference\sample,<col codes>", then one row per
// reference chip; 4 decimals.
void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid);
// Method, pages, axis codes, centerline cells and statistics.
std::string heatmap_metadata_json(const HeatmapGrid& grid);

// Accuracy tables: "table,calculation,<set labels>" then one "hue" row and
// one "hvc" row per method, percentages to 2 decimals.
void write_accuracy_csv(std::ostream& out, const AccuracyReport& report);
// One line per (method, set, observation).
void write_match_records_csv(std::ostream& out, const AccuracyReport& report);

// "code,page,<axes>[,gamut_clamped]"; 6 decimals.
void write_scatter_csv(std::ostream& out, const ScatterExport& exported);
std::string clumping_json(const ScatterExport& exported, const ClumpingIndex& index);

// "device,set,channel,mean_offset,stdev,n" summary rows.
void write_device_offsets_csv(std::ostream& out, const DeviceOffsetReport& report);
// "device,set,code,dL,da,db" per-chip rows.
void write_device_deltas_csv(std::ostream& out, const DeviceOffsetReport& report);

}  // namespace soilcolor
