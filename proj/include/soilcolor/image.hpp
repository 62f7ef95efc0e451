#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "soilcolor/color.hpp"

namespace soilcolor {

// Decoded 8-bit RGB raster, row-major, interleaved R, G, B.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Raster() = default;
  Raster(int w, int h, SrgbColor fill = {});

  SrgbColor at(int x, int y) const;
  void set(int x, int y, SrgbColor c);
};

struct Region {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

// Central 50% x 50% of a width x height image (never empty for a
// non-empty image).
Region central_region(int width, int height) noexcept;

// A raster plus the rectangle to sample. Throws DomainError when the region
// is empty or leaves the raster.
class ImagePatch {
 public:
  explicit ImagePatch(Raster raster);
  ImagePatch(Raster raster, Region region);

  const Raster& raster() const noexcept { return raster_; }
  const Region& region() const noexcept { return region_; }

 private:
  Raster raster_;
  Region region_;
};

enum class PatchStatistic { Mean, Median };

// Per-channel statistic over the region, rounded half-up to 8 bits.
SrgbColor extract_patch_color(const ImagePatch& patch, PatchStatistic statistic = PatchStatistic::Mean);

// Decodes PNG (preferred) or JPEG (decoder-dependent, warns). Throws IoError
// naming the file when it cannot be read.
Raster read_image(const std::string& path);
// Writes a PNG. Throws IoError.
void write_png(const std::string& path, const Raster& raster);

}  // namespace soilcolor
