#include "soilcolor/chip_database.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "soilcolor/csv.hpp"
#include "soilcolor/diagnostics.hpp"
#include "soilcolor/error.hpp"

namespace soilcolor {

namespace detail {
extern const std::string_view kBundledRenotationCsv;
}

namespace {

csv::Table read_table(std::istream& in) { return csv::read(in); }

std::size_t require_column(const csv::Table& t, std::string_view name, std::string_view what) {
  if (auto c = t.column(name)) return *c;
  throw LoadError(std::string(what) + " is missing column '" + std::string(name) + "'");
}

bool finite(const LabColor& c) { return std::isfinite(c.l) && std::isfinite(c.a) && std::isfinite(c.b); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string_view to_string(ChipSource source) noexcept {
  return source == ChipSource::SensorScan ? "sensor-scan" : "renotation-derived";
}

ChipDatabase::ChipDatabase(std::vector<Chip> chips) : chips_(std::move(chips)) {
  std::stable_sort(chips_.begin(), chips_.end(),
                   [](const Chip& a, const Chip& b) { return canonical_compare(a.code, b.code) < 0; });
  for (std::size_t i = 0; i < chips_.size(); ++i) {
    const Chip& chip = chips_[i];
    if (!finite(chip.lab)) throw DomainError("chip " + format(chip.code) + " has non-finite Lab");
    if (!index_.emplace(chip.code, i).second) throw DomainError("duplicate chip " + format(chip.code));
    pages_[chip.code.hue].push_back(i);
  }
}

const Chip* ChipDatabase::find(const MunsellCode& code) const {
  auto it = index_.find(code);
  return it == index_.end() ? nullptr : &chips_[it->second];
}

std::vector<MunsellHue> ChipDatabase::pages() const {
  std::vector<MunsellHue> out;
  out.reserve(pages_.size());
  for (const auto& [hue, _] : pages_) out.push_back(hue);
  return out;
}

std::vector<const Chip*> ChipDatabase::page(const MunsellHue& hue) const {
  std::vector<const Chip*> out;
  if (auto it = pages_.find(hue); it != pages_.end()) {
    for (std::size_t i : it->second) out.push_back(&chips_[i]);
  }
  return out;
}

const PageLayout& standard_page_layout() {
  static const PageLayout layout = [] {
    PageLayout l;
    for (double value : {8.0, 7.0, 6.0, 5.0}) {
      for (double chroma : {1.0, 2.0, 3.0, 4.0, 6.0, 8.0}) l.emplace_back(value, chroma);
    }
    for (double chroma : {1.0, 2.0, 3.0, 4.0, 6.0}) l.emplace_back(4.0, chroma);
    for (double chroma : {1.0, 2.0, 3.0}) l.emplace_back(3.0, chroma);
    for (double chroma : {1.0, 2.0}) l.emplace_back(2.5, chroma);
    return l;
  }();
  return layout;
}

ChipDatabase build_chip_database(std::istream& renotation, const BuildOptions& options) {
  const csv::Table table = read_table(renotation);
  const std::size_t hue_col = require_column(table, "hue", "renotation table");
  const std::size_t value_col = require_column(table, "value", "renotation table");
  const std::size_t chroma_col = require_column(table, "chroma", "renotation table");
  const std::size_t x_col = require_column(table, "x", "renotation table");
  const std::size_t y_col = require_column(table, "y", "renotation table");
  const std::size_t big_y_col = require_column(table, "Y", "renotation table");

  std::set<MunsellCode, CanonicalLess> wanted;
  for (const MunsellHue& hue : options.pages) {
    for (const auto& [value, chroma] : options.layout) wanted.insert(MunsellCode{hue, value, chroma});
  }

  const Illuminant& source = Illuminant::c();
  const Illuminant& target = Illuminant::get(options.target);
  std::vector<Chip> chips;
  std::set<MunsellCode, CanonicalLess> seen;
  for (const csv::Row& row : table.rows) {
    const std::string& hue_text = row.fields[hue_col];
    if (hue_text == "N" || hue_text == "n") continue;
    MunsellHue hue;
    try {
      hue = parse_munsell_hue(hue_text);
    } catch (const ParseError& e) {
      throw LoadError(e.what(), row.line);
    }
    const MunsellCode code{hue, csv::to_double(row.fields[value_col], row.line, "value"),
                           csv::to_double(row.fields[chroma_col], row.line, "chroma")};
    if (!wanted.count(code)) continue;
    if (!seen.insert(code).second) throw LoadError("duplicate renotation entry for " + format(code), row.line);

    const double x = csv::to_double(row.fields[x_col], row.line, "x");
    const double y = csv::to_double(row.fields[y_col], row.line, "y");
    const double big_y = csv::to_double(row.fields[big_y_col], row.line, "Y");
    if (y <= 0.0 || big_y < 0.0) throw LoadError("invalid xyY for " + format(code), row.line);
    const XyzColor xyz_c = xyy_to_xyz(x, y, big_y / 100.0, IlluminantName::C);
    const XyzColor xyz = adapt_white_point(xyz_c, source, target);
    chips.push_back({code, xyz_to_lab(xyz, target), ChipSource::RenotationDerived, {}});
  }

  std::vector<std::string> missing;
  for (const MunsellCode& code : wanted) {
    if (!seen.count(code)) missing.push_back(format(code));
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw BuildError("renotation data lacks " + std::to_string(missing.size()) + " chip(s): " + list);
  }
  return ChipDatabase(std::move(chips));
}

ChipDatabase build_chip_database_file(const std::string& path, const BuildOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open renotation file '" + path + "'");
  return build_chip_database(in, options);
}

std::string_view bundled_renotation_csv() noexcept { return detail::kBundledRenotationCsv; }

const ChipDatabase& bundled_chip_database() {
  static const ChipDatabase db = [] {
    std::istringstream in{std::string(bundled_renotation_csv())};
    return build_chip_database(in);
  }();
  return db;
}

ChipDatabase load_chip_database(std::istream& scan, ReplicateAggregate aggregate) {
  const csv::Table table = read_table(scan);
  const std::size_t hue_col = require_column(table, "hue", "chip scan file");
  const std::size_t value_col = require_column(table, "value", "chip scan file");
  const std::size_t chroma_col = require_column(table, "chroma", "chip scan file");
  const std::size_t l_col = require_column(table, "L", "chip scan file");
  const std::size_t a_col = require_column(table, "a", "chip scan file");
  const std::size_t b_col = require_column(table, "b", "chip scan file");
  const std::size_t rep_col = require_column(table, "replicate", "chip scan file");
  if (table.rows.empty()) {
    warn("chip scan file contains no readings; database is empty");
    return {};
  }

  // code -> (replicate index -> reading)
  std::map<MunsellCode, std::map<int, LabColor>, CanonicalLess> readings;
  for (const csv::Row& row : table.rows) {
    MunsellCode code;
    try {
      code = make_munsell(row.fields[hue_col], row.fields[value_col], row.fields[chroma_col]);
    } catch (const ParseError& e) {
      throw LoadError(e.what(), row.line);
    }
    const LabColor lab{csv::to_double(row.fields[l_col], row.line, "L"),
                       csv::to_double(row.fields[a_col], row.line, "a"),
                       csv::to_double(row.fields[b_col], row.line, "b"), IlluminantName::D65};
    if (lab.l < 0.0 || lab.l > 100.0) {
      throw LoadError("L* " + row.fields[l_col] + " outside [0, 100] for " + format(code), row.line);
    }
    const int replicate = csv::to_int(row.fields[rep_col], row.line, "replicate");
    if (replicate < 1) throw LoadError("replicate index must be >= 1, got " + std::to_string(replicate), row.line);
    if (!readings[code].emplace(replicate, lab).second) {
      throw LoadError("duplicate replicate " + std::to_string(replicate) + " for " + format(code), row.line);
    }
  }

  std::vector<Chip> chips;
  chips.reserve(readings.size());
  for (auto& [code, by_replicate] : readings) {
    Chip chip{code, {}, ChipSource::SensorScan, {}};
    for (const auto& [_, lab] : by_replicate) chip.replicates.push_back(lab);
    const double n = static_cast<double>(chip.replicates.size());
    if (aggregate == ReplicateAggregate::Mean) {
      for (const LabColor& r : chip.replicates) {
        chip.lab.l += r.l;
        chip.lab.a += r.a;
        chip.lab.b += r.b;
      }
      chip.lab.l /= n;
      chip.lab.a /= n;
      chip.lab.b /= n;
    } else {
      std::vector<double> l, a, b;
      for (const LabColor& r : chip.replicates) {
        l.push_back(r.l);
        a.push_back(r.a);
        b.push_back(r.b);
      }
      chip.lab = {median(l), median(a), median(b), IlluminantName::D65};
    }
    chips.push_back(std::move(chip));
  }
  return ChipDatabase(std::move(chips));
}

ChipDatabase load_chip_database_file(const std::string& path, ReplicateAggregate aggregate) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open chip scan file '" + path + "'");
  try {
    return load_chip_database(in, aggregate);
  } catch (const LoadError& e) {
    throw e.in_file(path);
  }
}

MatchResult match(const LabColor& query, const ChipDatabase& db, const DeltaEMethod& method,
                  std::span<const MunsellHue> pages) {
  MatchResult result{query, {}, method};
  result.ranked.reserve(db.size());
  for (const Chip& chip : db.chips()) {
    if (!pages.empty() && std::find(pages.begin(), pages.end(), chip.code.hue) == pages.end()) continue;
    result.ranked.push_back({chip.code, delta_e_value(method, chip.lab, query)});
  }
  if (result.ranked.empty()) throw DomainError("no chips to match against after page filtering");
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const RankedChip& a, const RankedChip& b) { return a.delta_e < b.delta_e; });
  return result;
}

MatchScore score_match(const MatchResult& result, const MunsellCode& truth) noexcept {
  if (result.ranked.empty()) return {};
  const MunsellCode& top = result.ranked.front().code;
  return {top.hue == truth.hue, top == truth};
}

}  // namespace soilcolor
