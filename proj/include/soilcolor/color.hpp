#pragma once

// Color types and conversions between sRGB, linear RGB, CIE XYZ, CIE L*a*b*,
// CIE LCh(ab) and CMYK.
//
// All math is double precision; 8-bit quantization happens only when an
// SrgbColor is produced. The CIE 1931 2 degree observer is assumed
// throughout, and sRGB (IEC 61966-2-1, D65) is the only RGB encoding.

#include <array>
#include <cstdint>
#include <string_view>

namespace soilcolor {

enum class IlluminantName { D65, C, D50 };

struct XyzColor;

// Reference white. white_point is normalized so that Y == 1 exactly.
class Illuminant {
 public:
  static const Illuminant& d65();
  static const Illuminant& c();
  static const Illuminant& d50();
  static const Illuminant& get(IlluminantName name);
  // Accepts "D65", "C", "D50" (case-insensitive); throws ParseError.
  static const Illuminant& parse(std::string_view text);

  IlluminantName name() const noexcept { return name_; }
  std::string_view label() const noexcept;
  // Chromaticity of the white point.
  std::array<double, 2> chromaticity() const noexcept { return {x_, y_}; }
  XyzColor white_point() const noexcept;

  friend bool operator==(const Illuminant& a, const Illuminant& b) noexcept { return a.name_ == b.name_; }

 private:
  constexpr Illuminant(IlluminantName name, double x, double y) : name_(name), x_(x), y_(y) {}

  IlluminantName name_;
  double x_;
  double y_;
};

struct XyzColor {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  IlluminantName illuminant = IlluminantName::D65;
};

struct LabColor {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
  IlluminantName illuminant = IlluminantName::D65;
};

// Hue angle h is in degrees, normalized to [0, 360).
struct LchColor {
  double l = 0.0;
  double c = 0.0;
  double h = 0.0;
  IlluminantName illuminant = IlluminantName::D65;
};

struct CmykColor {
  double c = 0.0;
  double m = 0.0;
  double y = 0.0;
  double k = 0.0;
};

// Linear-light sRGB. Components may leave [0, 1] on the inverse path.
struct LinearRgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

// 8-bit sRGB.
class SrgbColor {
 public:
  constexpr SrgbColor() = default;
  constexpr SrgbColor(std::uint8_t r, std::uint8_t g, std::uint8_t b) : r_(r), g_(g), b_(b) {}
  // Throws DomainError when a channel is outside [0, 255].
  static SrgbColor from_ints(int r, int g, int b);

  constexpr std::uint8_t r() const noexcept { return r_; }
  constexpr std::uint8_t g() const noexcept { return g_; }
  constexpr std::uint8_t b() const noexcept { return b_; }
  // Channels divided by 255.
  std::array<double, 3> normalized() const noexcept { return {r_ / 255.0, g_ / 255.0, b_ / 255.0}; }

  friend constexpr bool operator==(const SrgbColor&, const SrgbColor&) = default;

 private:
  std::uint8_t r_ = 0;
  std::uint8_t g_ = 0;
  std::uint8_t b_ = 0;
};

// Result of encoding a linear color into 8 bits; `clamped` is set when any
// channel had to be clipped into the sRGB cube.
struct SrgbEncoding {
  SrgbColor color;
  bool clamped = false;
};

// sRGB transfer functions on a single normalized channel.
double srgb_decode_channel(double encoded) noexcept;
double srgb_encode_channel(double linear) noexcept;

LinearRgb srgb_to_linear(const SrgbColor& c) noexcept;
SrgbEncoding linear_to_srgb(const LinearRgb& rgb) noexcept;

// Only D65 is accepted; adapt the result with adapt_white_point for other
// whites. Throws ConfigError otherwise.
XyzColor linear_to_xyz(const LinearRgb& rgb, const Illuminant& illuminant = Illuminant::d65());
LinearRgb xyz_to_linear(const XyzColor& xyz);

// Throws DomainError on a negative component or when xyz is tagged with a
// different illuminant.
LabColor xyz_to_lab(const XyzColor& xyz, const Illuminant& illuminant = Illuminant::d65());
XyzColor lab_to_xyz(const LabColor& lab);

LchColor lab_to_lch(const LabColor& lab) noexcept;
LabColor lch_to_lab(const LchColor& lch) noexcept;

// Pure black maps to (0, 0, 0, 1).
CmykColor srgb_to_cmyk(const SrgbColor& c) noexcept;

// xyY -> XYZ, tagged with the given illuminant. Y is on the 0..1 scale.
XyzColor xyy_to_xyz(double x, double y, double big_y, IlluminantName illuminant);

// Linear (von Kries) adaptation in the Bradford cone space. Maps the source
// white exactly onto the destination white. Throws DomainError when
// xyz is not tagged with `from`.
XyzColor adapt_white_point(const XyzColor& xyz, const Illuminant& from, const Illuminant& to);

// Convenience chains used by the matching pipeline.
LabColor srgb_to_lab(const SrgbColor& c, const Illuminant& illuminant = Illuminant::d65());
SrgbEncoding lab_to_srgb(const LabColor& lab);

}  // namespace soilcolor
