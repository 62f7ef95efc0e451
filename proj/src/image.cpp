#include "soilcolor/image.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "soilcolor/diagnostics.hpp"
#include "soilcolor/error.hpp"

namespace soilcolor {

namespace {

std::string lower_extension(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

// floor(sum / n + 1/2) in exact integer arithmetic.
std::uint8_t round_half_up(std::uint64_t sum, std::uint64_t n) {
  return static_cast<std::uint8_t>((2 * sum + n) / (2 * n));
}

}  // namespace

Raster::Raster(int w, int h, SrgbColor fill) : width(w), height(h) {
  if (w < 0 || h < 0) throw DomainError("negative raster size");
  pixels.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
  for (std::size_t i = 0; i < pixels.size(); i += 3) {
    pixels[i] = fill.r();
    pixels[i + 1] = fill.g();
    pixels[i + 2] = fill.b();
  }
}

SrgbColor Raster::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

void Raster::set(int x, int y, SrgbColor c) {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  pixels[i] = c.r();
  pixels[i + 1] = c.g();
  pixels[i + 2] = c.b();
}

Region central_region(int width, int height) noexcept {
  const int w = std::max(1, width / 2);
  const int h = std::max(1, height / 2);
  return {(width - w) / 2, (height - h) / 2, w, h};
}

ImagePatch::ImagePatch(Raster raster) : raster_(std::move(raster)) {
  if (raster_.width == 0 || raster_.height == 0) throw DomainError("image is empty");
  region_ = central_region(raster_.width, raster_.height);
}

ImagePatch::ImagePatch(Raster raster, Region region) : raster_(std::move(raster)), region_(region) {
  if (region.width <= 0 || region.height <= 0) throw DomainError("patch region is empty");
  if (region.x < 0 || region.y < 0 || region.x + region.width > raster_.width ||
      region.y + region.height > raster_.height) {
    throw DomainError("patch region exceeds the " + std::to_string(raster_.width) + "x" +
                      std::to_string(raster_.height) + " image");
  }
}

SrgbColor extract_patch_color(const ImagePatch& patch, PatchStatistic statistic) {
  const Raster& img = patch.raster();
  const Region& r = patch.region();
  const std::uint64_t n = static_cast<std::uint64_t>(r.width) * static_cast<std::uint64_t>(r.height);

  if (statistic == PatchStatistic::Mean) {
    std::array<std::uint64_t, 3> sum{};
    for (int y = r.y; y < r.y + r.height; ++y) {
      for (int x = r.x; x < r.x + r.width; ++x) {
        const SrgbColor c = img.at(x, y);
        sum[0] += c.r();
        sum[1] += c.g();
        sum[2] += c.b();
      }
    }
    return {round_half_up(sum[0], n), round_half_up(sum[1], n), round_half_up(sum[2], n)};
  }

  // Median via per-channel histograms; even counts average the two middle
  // samples, rounded half-up.
  std::array<std::array<std::uint64_t, 256>, 3> hist{};
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) {
      const SrgbColor c = img.at(x, y);
      ++hist[0][c.r()];
      ++hist[1][c.g()];
      ++hist[2][c.b()];
    }
  }
  auto kth = [](const std::array<std::uint64_t, 256>& h, std::uint64_t k) {
    std::uint64_t seen = 0;
    for (int v = 0; v < 256; ++v) {
      seen += h[v];
      if (seen > k) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{255};
  };
  std::array<std::uint8_t, 3> out{};
  for (int ch = 0; ch < 3; ++ch) {
    const std::uint64_t lo = kth(hist[ch], (n - 1) / 2);
    const std::uint64_t hi = kth(hist[ch], n / 2);
    out[ch] = round_half_up(lo + hi, 2);
  }
  return {out[0], out[1], out[2]};
}

Raster read_image(const std::string& path) {
  if (!std::filesystem::exists(path)) throw IoError("image file not found: '" + path + "'");
  const std::string ext = lower_extension(path);
  if (ext == ".jpg" || ext == ".jpeg") {
    warn("'" + path + "' is JPEG; decoded values may differ by 1/255 between decoders");
  }
  cv::Mat bgr;
  try {
    bgr = cv::imread(path, cv::IMREAD_COLOR);
  } catch (const cv::Exception&) {
    bgr.release();
  }
  if (bgr.empty()) throw IoError("cannot decode image '" + path + "'");
  if (bgr.depth() != CV_8U) throw IoError("image '" + path + "' is not 8 bits per channel");

  Raster out(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) out.set(x, y, {row[x][2], row[x][1], row[x][0]});
  }
  return out;
}

void write_png(const std::string& path, const Raster& raster) {
  cv::Mat bgr(raster.height, raster.width, CV_8UC3);
  for (int y = 0; y < raster.height; ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < raster.width; ++x) {
      const SrgbColor c = raster.at(x, y);
      row[x] = cv::Vec3b(c.b(), c.g(), c.r());
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path, bgr);
  } catch (const cv::Exception&) {
    ok = false;
  }
  if (!ok) throw IoError("cannot write PNG '" + path + "'");
}

}  // namespace soilcolor
