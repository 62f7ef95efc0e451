#include "soilcolor/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "soilcolor/error.hpp"

namespace soilcolor {

namespace {

std::vector<const Chip*> heatmap_axis(const ChipDatabase& db, const MunsellHue& page) {
  auto chips = db.page(page);
  if (chips.empty()) throw DomainError("hue page " + format(page) + " is not in the chip database");
  std::stable_sort(chips.begin(), chips.end(), [](const Chip* a, const Chip* b) {
    if (a->code.value != b->code.value) return a->code.value > b->code.value;
    return a->code.chroma < b->code.chroma;
  });
  return chips;
}

std::string join_codes(const std::vector<MunsellCode>& codes) {
  std::string out;
  for (const auto& c : codes) out += (out.empty() ? "" : ", ") + format(c);
  return out;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(n));
  for (unsigned t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

DeviceOffsets offsets_for(const CaptureSet& set, const std::vector<std::array<double, 3>>& reference_labs) {
  DeviceOffsets out{set.device(), set.label(), {}, {}, {}};
  const auto& obs = set.observations();
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const LabColor lab = observed_lab(obs[i]);
    const auto& ref = reference_labs[i];
    out.deltas.push_back({obs[i].truth, {lab.l - ref[0], lab.a - ref[1], lab.b - ref[2]}});
  }
  const double n = static_cast<double>(out.deltas.size());
  for (int ch = 0; ch < 3; ++ch) {
    double sum = 0.0;
    for (const auto& d : out.deltas) sum += d.delta[ch];
    out.mean[ch] = n > 0 ? sum / n : 0.0;
    double ss = 0.0;
    for (const auto& d : out.deltas) ss += (d.delta[ch] - out.mean[ch]) * (d.delta[ch] - out.mean[ch]);
    out.stdev[ch] = n > 0 ? std::sqrt(ss / n) : 0.0;
  }
  return out;
}

}  // namespace

HeatmapGrid heatmap(const ChipDatabase& db, const MunsellHue& page_a, const MunsellHue& page_b,
                    const DeltaEMethod& method) {
  const auto rows = heatmap_axis(db, page_a);
  const auto cols = heatmap_axis(db, page_b);
  HeatmapGrid grid{page_a, page_b, {}, {}, {}, method, {}};
  for (const Chip* c : rows) grid.row_chips.push_back(c->code);
  for (const Chip* c : cols) grid.col_chips.push_back(c->code);
  grid.values.assign(rows.size(), std::vector<double>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      grid.values[i][j] = delta_e_value(method, rows[i]->lab, cols[j]->lab);
      if (rows[i]->code.value == cols[j]->code.value && rows[i]->code.chroma == cols[j]->code.chroma) {
        grid.centerline.push_back({i, j, grid.values[i][j]});
      }
    }
  }
  return grid;
}

CenterlineStats describe(std::span<const double> values) {
  if (values.empty()) throw DomainError("statistics of an empty centerline");
  CenterlineStats s;
  s.count = values.size();
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  s.min = values.front();
  s.max = values.front();
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stdev = std::sqrt(ss / n);
  if (values.size() > 1) s.sample_stdev = std::sqrt(ss / (n - 1.0));
  // Summation round-off must not push the mean outside [min, max].
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

CenterlineStats centerline_stats(const HeatmapGrid& grid) {
  std::vector<double> values;
  for (const auto& cell : grid.centerline) values.push_back(cell.value);
  return describe(values);
}

double off_centerline_mean(const HeatmapGrid& grid) {
  std::set<std::pair<std::size_t, std::size_t>> on_line;
  for (const auto& cell : grid.centerline) on_line.emplace(cell.row, cell.col);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    for (std::size_t j = 0; j < grid.values[i].size(); ++j) {
      if (on_line.count({i, j})) continue;
      sum += grid.values[i][j];
      ++n;
    }
  }
  if (n == 0) throw DomainError("heatmap has no off-centerline cells");
  return sum / static_cast<double>(n);
}

AccuracyReport evaluate(std::span<const CaptureSet> sets, const ChipDatabase& db,
                        std::span<const DeltaEMethod> methods, const EvaluateOptions& options) {
  AccuracyReport report;
  std::set<std::string> labels;
  for (const CaptureSet& set : sets) {
    if (!labels.insert(set.label()).second) throw EvaluationError("capture set label '" + set.label() + "' repeats");
    for (const Observation& o : set.observations()) {
      if (!db.contains(o.truth)) {
        throw EvaluationError("truth code " + format(o.truth) + " of set '" + set.label() +
                              "' is not in the chip database");
      }
    }
    report.set_labels.push_back(set.label());
  }
  report.methods.assign(methods.begin(), methods.end());

  std::vector<MunsellHue> pages;
  for (const MunsellHue& p : options.pages) {
    if (db.has_page(p)) pages.push_back(p);
  }
  if (!options.pages.empty() && pages.empty()) {
    throw EvaluationError("none of the evaluation pages are in the chip database");
  }

  // Queries converted once per set; shared read-only by the workers.
  const Illuminant& illuminant = Illuminant::get(options.illuminant);
  std::vector<std::vector<LabColor>> queries;
  for (const CaptureSet& set : sets) {
    auto& q = queries.emplace_back();
    for (const Observation& o : set.observations()) q.push_back(observed_lab(o, illuminant));
  }

  const std::size_t n_sets = sets.size();
  report.entries.resize(methods.size() * n_sets);
  parallel_for(report.entries.size(), options.threads, [&](std::size_t idx) {
    const std::size_t m = idx / n_sets;
    const std::size_t s = idx % n_sets;
    const CaptureSet& set = sets[s];
    AccuracyEntry entry{set.label(), set.device(), methods[m], set.size(), 0, 0, {}};
    entry.records.reserve(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) {
      const MunsellCode& truth = set.observations()[k].truth;
      const MatchResult result = match(queries[s][k], db, methods[m], pages);
      const MatchScore score = score_match(result, truth);
      entry.hue_correct += score.hue_correct;
      entry.hvc_correct += score.hvc_correct;
      entry.records.push_back({truth, result.best().code, result.best().delta_e, score.hue_correct, score.hvc_correct});
    }
    report.entries[idx] = std::move(entry);
  });
  return report;
}

std::string_view to_string(ScatterSpace space) noexcept {
  switch (space) {
    case ScatterSpace::RGB: return "rgb";
    case ScatterSpace::CMYK: return "cmyk";
    case ScatterSpace::XYZ: return "xyz";
    case ScatterSpace::LCH: return "lch";
    case ScatterSpace::LAB: return "lab";
  }
  return "?";
}

ScatterSpace parse_scatter_space(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  for (ScatterSpace s : {ScatterSpace::RGB, ScatterSpace::CMYK, ScatterSpace::XYZ, ScatterSpace::LCH, ScatterSpace::LAB}) {
    if (t == to_string(s)) return s;
  }
  throw ParseError("unknown color space '" + std::string(text) + "' (expected rgb, cmyk, xyz, lch or lab)",
                   std::string(text));
}

ScatterExport scatter_export(const ChipDatabase& db, ScatterSpace space) {
  ScatterExport out;
  out.space = space;
  switch (space) {
    case ScatterSpace::RGB: out.axes = {"R", "G", "B"}; break;
    case ScatterSpace::CMYK: out.axes = {"C", "M", "Y", "K"}; break;
    case ScatterSpace::XYZ: out.axes = {"X", "Y", "Z"}; break;
    case ScatterSpace::LCH: out.axes = {"L", "C", "h"}; break;
    case ScatterSpace::LAB: out.axes = {"L", "a", "b"}; break;
  }
  for (const Chip& chip : db.chips()) {
    ScatterRow row{chip.code, {}, false};
    switch (space) {
      case ScatterSpace::RGB:
      case ScatterSpace::CMYK: {
        const SrgbEncoding enc = lab_to_srgb(chip.lab);
        row.gamut_clamped = enc.clamped;
        if (space == ScatterSpace::RGB) {
          row.coords = {double(enc.color.r()), double(enc.color.g()), double(enc.color.b())};
        } else {
          const CmykColor k = srgb_to_cmyk(enc.color);
          row.coords = {k.c, k.m, k.y, k.k};
        }
        break;
      }
      case ScatterSpace::XYZ: {
        const XyzColor xyz = lab_to_xyz(chip.lab);
        row.coords = {xyz.x, xyz.y, xyz.z};
        break;
      }
      case ScatterSpace::LCH: {
        const LchColor lch = lab_to_lch(chip.lab);
        row.coords = {lch.l, lch.c, lch.h};
        break;
      }
      case ScatterSpace::LAB: row.coords = {chip.lab.l, chip.lab.a, chip.lab.b}; break;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

ClumpingIndex clumping_index(const ScatterExport& exported) {
  std::set<MunsellHue, CanonicalLess> pages;
  for (const auto& row : exported.rows) pages.insert(row.code.hue);
  if (pages.size() < 2) throw DomainError("clumping index needs chips from at least two hue pages");

  const std::size_t dims = exported.rows.front().coords.size();
  std::vector<double> lo(dims, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dims, -std::numeric_limits<double>::infinity());
  for (const auto& row : exported.rows) {
    for (std::size_t d = 0; d < dims; ++d) {
      lo[d] = std::min(lo[d], row.coords[d]);
      hi[d] = std::max(hi[d], row.coords[d]);
    }
  }
  ClumpingIndex out;
  double diag2 = 0.0;
  for (std::size_t d = 0; d < dims; ++d) diag2 += (hi[d] - lo[d]) * (hi[d] - lo[d]);
  out.range = std::sqrt(diag2);

  std::map<MunsellHue, std::pair<double, std::size_t>, CanonicalLess> sums;
  double total = 0.0;
  for (const auto& a : exported.rows) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& b : exported.rows) {
      if (b.code.hue == a.code.hue) continue;
      double d2 = 0.0;
      for (std::size_t d = 0; d < dims; ++d) d2 += (a.coords[d] - b.coords[d]) * (a.coords[d] - b.coords[d]);
      nearest = std::min(nearest, d2);
    }
    const double normalized = out.range > 0.0 ? std::sqrt(nearest) / out.range : 0.0;
    auto& [sum, n] = sums[a.code.hue];
    sum += normalized;
    ++n;
    total += normalized;
  }
  for (const auto& [page, acc] : sums) out.per_page[page] = acc.first / static_cast<double>(acc.second);
  out.overall = total / static_cast<double>(exported.rows.size());
  return out;
}

DeviceOffsetReport device_offsets(std::span<const CaptureSet> sets, const CaptureSet& reference) {
  DeviceOffsetReport report;
  for (const CaptureSet& set : sets) {
    std::vector<MunsellCode> missing;
    for (const Observation& r : reference.observations()) {
      if (!set.find(r.truth)) missing.push_back(r.truth);
    }
    std::vector<MunsellCode> extra;
    for (const Observation& o : set.observations()) {
      if (!reference.find(o.truth)) extra.push_back(o.truth);
    }
    if (!missing.empty() || !extra.empty()) {
      std::string msg = "set '" + set.label() + "' does not match the reference inventory";
      if (!missing.empty()) msg += "; missing: " + join_codes(missing);
      if (!extra.empty()) msg += "; not in reference: " + join_codes(extra);
      throw EvaluationError(msg);
    }
    std::vector<std::array<double, 3>> refs;
    for (const Observation& o : set.observations()) {
      const LabColor lab = observed_lab(*reference.find(o.truth));
      refs.push_back({lab.l, lab.a, lab.b});
    }
    report.devices.push_back(offsets_for(set, refs));
  }
  return report;
}

DeviceOffsetReport device_offsets(std::span<const CaptureSet> sets, const ChipDatabase& reference) {
  DeviceOffsetReport report;
  for (const CaptureSet& set : sets) {
    std::vector<MunsellCode> missing;
    std::vector<std::array<double, 3>> refs;
    for (const Observation& o : set.observations()) {
      const Chip* chip = reference.find(o.truth);
      if (!chip) {
        missing.push_back(o.truth);
        continue;
      }
      refs.push_back({chip->lab.l, chip->lab.a, chip->lab.b});
    }
    if (!missing.empty()) {
      throw EvaluationError("set '" + set.label() + "' has codes missing from the chip database: " +
                            join_codes(missing));
    }
    report.devices.push_back(offsets_for(set, refs));
  }
  return report;
}

}  // namespace soilcolor
