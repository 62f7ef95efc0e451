#pragma once

// Capture sets: per-chip colors observed by one device in one session.

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "soilcolor/chip_database.hpp"
#include "soilcolor/color.hpp"
#include "soilcolor/image.hpp"
#include "soilcolor/munsell.hpp"

namespace soilcolor {

struct Observation {
  MunsellCode truth;
  std::variant<SrgbColor, LabColor> observed;

  friend bool operator==(const Observation& a, const Observation& b);
};

// Observed color in L*a*b* under `illuminant`; sRGB goes through color-core.
LabColor observed_lab(const Observation& obs, const Illuminant& illuminant = Illuminant::d65());

class CaptureSet {
 public:
  CaptureSet() = default;
  CaptureSet(std::string label, std::string device, std::string session = {});

  const std::string& label() const noexcept { return label_; }
  const std::string& device() const noexcept { return device_; }
  // Time-of-day or other session tag, may be empty.
  const std::string& session() const noexcept { return session_; }
  const std::vector<Observation>& observations() const noexcept { return observations_; }
  std::size_t size() const noexcept { return observations_.size(); }
  bool empty() const noexcept { return observations_.empty(); }

  // Throws DomainError when the truth code is already present.
  void add(Observation obs);
  const Observation* find(const MunsellCode& truth) const;

  friend bool operator==(const CaptureSet&, const CaptureSet&) = default;

 private:
  std::string label_;
  std::string device_;
  std::string session_;
  std::vector<Observation> observations_;
};

struct ManifestOptions {
  // Non-empty values override the "# label:" / "# device:" / "# session:"
  // header comments of the manifest.
  std::string label;
  std::string device;
  std::string session;
  PatchStatistic statistic = PatchStatistic::Mean;
  // Sampled rectangle for image rows; central 50% x 50% when unset.
  std::optional<Region> region;
};

// Manifest CSV `truth,image_path,R,G,B,L,a,b` with exactly one of the image
// path, the RGB triple or the Lab triple populated per row. Image paths are
// resolved against `image_dir`. Throws LoadError with the row number.
CaptureSet load_capture_set(std::istream& manifest, const std::filesystem::path& image_dir,
                            const ManifestOptions& options = {});
// The label defaults to the file stem when neither options nor header set it.
CaptureSet load_capture_set_file(const std::filesystem::path& manifest, const std::filesystem::path& image_dir = {},
                                 ManifestOptions options = {});

// Writes a manifest with inline colors that load_capture_set reads back
// into an identical set.
void write_capture_set(std::ostream& out, const CaptureSet& set);

// One observation per chip: Lab + offset + N(0, sigma^2) noise per channel,
// drawn from a 64-bit Mersenne Twister seeded with `seed` (chips in
// canonical order, channels L, a, b). Throws ParameterError for sigma < 0.
CaptureSet synthesize_capture_set(const ChipDatabase& db, double noise_sigma, std::array<double, 3> offset,
                                  std::uint64_t seed, std::string label = "synthetic", std::string device = "synthetic");

}  // namespace soilcolor
