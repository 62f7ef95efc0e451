#include "soilcolor/report.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace soilcolor {

namespace {

using nlohmann::ordered_json;

ordered_json stats_json(const CenterlineStats& s) {
  ordered_json j;
  j["count"] = s.count;
  j["mean"] = s.mean;
  j["stdev"] = s.stdev;
  j["sample_stdev"] = s.sample_stdev ? ordered_json(*s.sample_stdev) : ordered_json(nullptr);
  j["min"] = s.min;
  j["max"] = s.max;
  return j;
}

ordered_json codes_json(const std::vector<MunsellCode>& codes) {
  ordered_json j = ordered_json::array();
  for (const auto& c : codes) j.push_back(format(c));
  return j;
}

}  // namespace

void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid) {
  out << "reference\\sample";
  for (const auto& c : grid.col_chips) out << ',' << format(c);
  out << '\n';
  for (std::size_t i = 0; i < grid.row_chips.size(); ++i) {
    out << format(grid.row_chips[i]);
    for (double v : grid.values[i]) out << fmt::format(",{:.4f}", v);
    out << '\n';
  }
}

std::string heatmap_metadata_json(const HeatmapGrid& grid) {
  ordered_json j;
  j["method"] = grid.method.token();
  j["method_name"] = grid.method.display_name();
  j["page_a"] = format(grid.page_a);
  j["page_b"] = format(grid.page_b);
  j["rows"] = codes_json(grid.row_chips);
  j["cols"] = codes_json(grid.col_chips);
  ordered_json line = ordered_json::array();
  for (const auto& cell : grid.centerline) {
    line.push_back({{"row", format(grid.row_chips[cell.row])},
                    {"col", format(grid.col_chips[cell.col])},
                    {"delta_e", cell.value}});
  }
  j["centerline"] = line;
  if (!grid.centerline.empty()) j["centerline_stats"] = stats_json(centerline_stats(grid));
  if (grid.centerline.size() < grid.row_chips.size() * grid.col_chips.size()) {
    j["off_centerline_mean"] = off_centerline_mean(grid);
  }
  return j.dump(2) + "\n";
}

void write_accuracy_csv(std::ostream& out, const AccuracyReport& report) {
  out << "table,calculation";
  for (const auto& label : report.set_labels) out << ',' << label;
  out << '\n';
  for (const char* table : {"hue", "hvc"}) {
    const bool hue = table[1] == 'u';
    for (std::size_t m = 0; m < report.methods.size(); ++m) {
      out << table << ',' << report.methods[m].display_name();
      for (std::size_t s = 0; s < report.set_labels.size(); ++s) {
        const AccuracyEntry& e = report.at(m, s);
        out << fmt::format(",{:.2f}", hue ? e.hue_accuracy() : e.hvc_accuracy());
      }
      out << '\n';
    }
  }
}

void write_match_records_csv(std::ostream& out, const AccuracyReport& report) {
  out << "calculation,set,device,truth,predicted,delta_e,hue_correct,hvc_correct\n";
  for (const AccuracyEntry& e : report.entries) {
    for (const ChipMatchRecord& r : e.records) {
      out << fmt::format("{},{},{},{},{},{:.4f},{},{}\n", e.method.display_name(), e.set_label, e.device,
                         format(r.truth), format(r.predicted), r.delta_e, int(r.hue_correct), int(r.hvc_correct));
    }
  }
}

void write_scatter_csv(std::ostream& out, const ScatterExport& exported) {
  const bool rgb_based = exported.space == ScatterSpace::RGB || exported.space == ScatterSpace::CMYK;
  out << "code,page";
  for (const auto& axis : exported.axes) out << ',' << axis;
  if (rgb_based) out << ",gamut_clamped";
  out << '\n';
  for (const ScatterRow& row : exported.rows) {
    out << format(row.code) << ',' << format(row.code.hue);
    for (double v : row.coords) out << fmt::format(",{:.6f}", v);
    if (rgb_based) out << ',' << int(row.gamut_clamped);
    out << '\n';
  }
}

std::string clumping_json(const ScatterExport& exported, const ClumpingIndex& index) {
  ordered_json j;
  j["space"] = std::string(to_string(exported.space));
  j["chips"] = exported.rows.size();
  j["range"] = index.range;
  j["overall"] = index.overall;
  ordered_json pages;
  for (const auto& [page, value] : index.per_page) pages[format(page)] = value;
  j["per_page"] = pages;
  return j.dump(2) + "\n";
}

void write_device_offsets_csv(std::ostream& out, const DeviceOffsetReport& report) {
  static constexpr const char* kChannels[] = {"L", "a", "b"};
  out << "device,set,channel,mean_offset,stdev,n\n";
  for (const DeviceOffsets& d : report.devices) {
    for (int ch = 0; ch < 3; ++ch) {
      out << fmt::format("{},{},{},{:.6f},{:.6f},{}\n", d.device, d.set_label, kChannels[ch], d.mean[ch], d.stdev[ch],
                         d.deltas.size());
    }
  }
}

void write_device_deltas_csv(std::ostream& out, const DeviceOffsetReport& report) {
  out << "device,set,code,dL,da,db\n";
  for (const DeviceOffsets& d : report.devices) {
    for (const ChipDelta& c : d.deltas) {
      out << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f}\n", d.device, d.set_label, format(c.code), c.delta[0],
                         c.delta[1], c.delta[2]);
    }
  }
}

}  // namespace soilcolor
