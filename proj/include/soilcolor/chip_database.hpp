#pragma once

// Soil chart chip database and nearest-chip matching.

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soilcolor/color.hpp"
#include "soilcolor/delta_e.hpp"
#include "soilcolor/munsell.hpp"

namespace soilcolor {

enum class ChipSource { RenotationDerived, SensorScan };

std::string_view to_string(ChipSource source) noexcept;

struct Chip {
  MunsellCode code;
  // Reference coordinates; D65 unless the database was built for another white.
  LabColor lab;
  ChipSource source = ChipSource::RenotationDerived;
  // Raw sensor readings in replicate order; empty for renotation chips.
  std::vector<LabColor> replicates;
};

// Immutable collection of chips stored in canonical order
// (hue circle, value, chroma) and indexed by hue page.
class ChipDatabase {
 public:
  ChipDatabase() = default;
  // Throws DomainError on duplicate codes or non-finite coordinates.
  explicit ChipDatabase(std::vector<Chip> chips);

  const std::vector<Chip>& chips() const noexcept { return chips_; }
  std::size_t size() const noexcept { return chips_.size(); }
  bool empty() const noexcept { return chips_.empty(); }

  const Chip* find(const MunsellCode& code) const;
  bool contains(const MunsellCode& code) const { return find(code) != nullptr; }

  // Hue pages present, in circle order.
  std::vector<MunsellHue> pages() const;
  bool has_page(const MunsellHue& hue) const { return pages_.count(hue) != 0; }
  // Chips of one page in canonical order; empty when the page is absent.
  std::vector<const Chip*> page(const MunsellHue& hue) const;

 private:
  std::vector<Chip> chips_;
  std::map<MunsellCode, std::size_t, CanonicalLess> index_;
  std::map<MunsellHue, std::vector<std::size_t>, CanonicalLess> pages_;
};

// (value, chroma) positions present on one chart page.
using PageLayout = std::vector<std::pair<double, double>>;

// 34 chips per page: values 5-8 at chromas 1, 2, 3, 4, 6, 8; value 4 at
// 1, 2, 3, 4, 6; value 3 at 1, 2, 3; value 2.5 at 1, 2.
const PageLayout& standard_page_layout();

struct BuildOptions {
  IlluminantName target = IlluminantName::D65;
  std::vector<MunsellHue> pages{default_pages().begin(), default_pages().end()};
  PageLayout layout = standard_page_layout();
};

// Builds chips from renotation rows `hue,value,chroma,x,y,Y` (xyY under
// illuminant C, Y on the 0-100 scale). Each chip on a requested page is
// converted xyY -> XYZ(C) -> Bradford to the target white -> L*a*b*.
// Neutral (hue "N") rows and rows off the requested pages/layout are
// skipped. Throws BuildError listing every absent chip, LoadError for
// malformed rows.
ChipDatabase build_chip_database(std::istream& renotation, const BuildOptions& options = {});
ChipDatabase build_chip_database_file(const std::string& path, const BuildOptions& options = {});

// The renotation table compiled into the library.
std::string_view bundled_renotation_csv() noexcept;
// Database built from the bundled table with default options (238 chips).
const ChipDatabase& bundled_chip_database();

enum class ReplicateAggregate { Mean, Median };

// Reads a sensor scan file `hue,value,chroma,L,a,b,replicate` (one row per
// reading, Lab assumed D65 / 2 degree). Readings of one chip are aggregated
// into Chip::lab. An empty file yields an empty database and a warning.
// Throws LoadError with the row number for invalid readings.
ChipDatabase load_chip_database(std::istream& scan, ReplicateAggregate aggregate = ReplicateAggregate::Mean);
ChipDatabase load_chip_database_file(const std::string& path,
                                     ReplicateAggregate aggregate = ReplicateAggregate::Mean);

struct RankedChip {
  MunsellCode code;
  double delta_e = 0.0;
};

struct MatchResult {
  LabColor query;
  // Ascending by delta_e; ties keep canonical chip order.
  std::vector<RankedChip> ranked;
  DeltaEMethod method;

  const RankedChip& best() const { return ranked.front(); }
};

// Exhaustive search with each chip as the reference and the query as the
// sample. An empty `pages` span means no filter. Throws DomainError when no
// chip survives the filter.
MatchResult match(const LabColor& query, const ChipDatabase& db, const DeltaEMethod& method = {},
                  std::span<const MunsellHue> pages = {});

struct MatchScore {
  bool hue_correct = false;
  bool hvc_correct = false;
};

// Scores the top-ranked chip against the true code.
MatchScore score_match(const MatchResult& result, const MunsellCode& truth) noexcept;

}  // namespace soilcolor
