#include "soilcolor/color.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "soilcolor/error.hpp"

namespace soilcolor {

namespace {

// CIE constants for the two-branch L*a*b* companding, in exact rational form.
constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

Eigen::Vector3d as_vector(const XyzColor& c) { return {c.x, c.y, c.z}; }

XyzColor as_xyz(const Eigen::Vector3d& v, IlluminantName tag) { return {v.x(), v.y(), v.z(), tag}; }

// Columns are the XYZ of the sRGB primaries scaled so that RGB (1,1,1)
// lands on the D65 white.
struct SrgbMatrices {
  Eigen::Matrix3d to_xyz;
  Eigen::Matrix3d from_xyz;
};

const SrgbMatrices& srgb_matrices() {
  static const SrgbMatrices m = [] {
    const double primaries[3][2] = {{0.64, 0.33}, {0.30, 0.60}, {0.15, 0.06}};
    Eigen::Matrix3d p;
    for (int i = 0; i < 3; ++i) {
      const double x = primaries[i][0];
      const double y = primaries[i][1];
      p.col(i) << x / y, 1.0, (1.0 - x - y) / y;
    }
    const Eigen::Vector3d white = as_vector(Illuminant::d65().white_point());
    const Eigen::Vector3d scale = p.partialPivLu().solve(white);
    SrgbMatrices out;
    out.to_xyz = p * scale.asDiagonal();
    out.from_xyz = out.to_xyz.inverse();
    return out;
  }();
  return m;
}

const Eigen::Matrix3d& bradford() {
  static const Eigen::Matrix3d m = (Eigen::Matrix3d() << 0.8951, 0.2664, -0.1614,  //
                                    -0.7502, 1.7135, 0.0367,                       //
                                    0.0389, -0.0685, 1.0296)
                                       .finished();
  return m;
}

double lab_f(double t) { return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0; }

double lab_f_inverse(double f) {
  const double cube = f * f * f;
  return cube > kEpsilon ? cube : (116.0 * f - 16.0) / kKappa;
}

double normalize_degrees(double deg) {
  double h = std::fmod(deg, 360.0);
  if (h < 0.0) h += 360.0;
  // fmod of a tiny negative angle can round back up to 360.
  return h >= 360.0 ? 0.0 : h;
}

}  // namespace

const Illuminant& Illuminant::d65() {
  static constexpr Illuminant i{IlluminantName::D65, 0.3127, 0.3290};
  return i;
}

const Illuminant& Illuminant::c() {
  static constexpr Illuminant i{IlluminantName::C, 0.31006, 0.31616};
  return i;
}

const Illuminant& Illuminant::d50() {
  static constexpr Illuminant i{IlluminantName::D50, 0.34567, 0.35850};
  return i;
}

const Illuminant& Illuminant::get(IlluminantName name) {
  switch (name) {
    case IlluminantName::D65: return d65();
    case IlluminantName::C: return c();
    case IlluminantName::D50: return d50();
  }
  throw ConfigError("unknown illuminant");
}

const Illuminant& Illuminant::parse(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (upper == "D65") return d65();
  if (upper == "C") return c();
  if (upper == "D50") return d50();
  throw ParseError("unknown illuminant '" + std::string(text) + "' (expected D65, C or D50)", std::string(text));
}

std::string_view Illuminant::label() const noexcept {
  switch (name_) {
    case IlluminantName::D65: return "D65";
    case IlluminantName::C: return "C";
    case IlluminantName::D50: return "D50";
  }
  return "?";
}

XyzColor Illuminant::white_point() const noexcept { return {x_ / y_, 1.0, (1.0 - x_ - y_) / y_, name_}; }

SrgbColor SrgbColor::from_ints(int r, int g, int b) {
  for (int ch : {r, g, b}) {
    if (ch < 0 || ch > 255) throw DomainError("sRGB channel " + std::to_string(ch) + " outside [0, 255]");
  }
  return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
}

double srgb_decode_channel(double encoded) noexcept {
  return encoded <= 0.04045 ? encoded / 12.92 : std::pow((encoded + 0.055) / 1.055, 2.4);
}

double srgb_encode_channel(double linear) noexcept {
  return linear <= 0.0031308 ? 12.92 * linear : 1.055 * std::pow(linear, 1.0 / 2.4) - 0.055;
}

LinearRgb srgb_to_linear(const SrgbColor& c) noexcept {
  const auto n = c.normalized();
  return {srgb_decode_channel(n[0]), srgb_decode_channel(n[1]), srgb_decode_channel(n[2])};
}

SrgbEncoding linear_to_srgb(const LinearRgb& rgb) noexcept {
  SrgbEncoding out;
  // Rounding noise from the matrix products does not count as leaving the gamut.
  constexpr double kSlack = 1e-9;
  auto quantize = [&out](double linear) {
    if (linear < -kSlack || linear > 1.0 + kSlack || !std::isfinite(linear)) out.clamped = true;
    linear = std::isfinite(linear) ? std::clamp(linear, 0.0, 1.0) : 0.0;
    return static_cast<std::uint8_t>(std::lround(srgb_encode_channel(linear) * 255.0));
  };
  const auto r = quantize(rgb.r);
  const auto g = quantize(rgb.g);
  const auto b = quantize(rgb.b);
  out.color = SrgbColor{r, g, b};
  return out;
}

XyzColor linear_to_xyz(const LinearRgb& rgb, const Illuminant& illuminant) {
  if (illuminant.name() != IlluminantName::D65) {
    throw ConfigError("sRGB is defined for D65 only; convert under D65 and adapt to " +
                      std::string(illuminant.label()));
  }
  return as_xyz(srgb_matrices().to_xyz * Eigen::Vector3d(rgb.r, rgb.g, rgb.b), IlluminantName::D65);
}

LinearRgb xyz_to_linear(const XyzColor& xyz) {
  if (xyz.illuminant != IlluminantName::D65) {
    throw ConfigError("sRGB is defined for D65 only; adapt XYZ from " +
                      std::string(Illuminant::get(xyz.illuminant).label()) + " first");
  }
  const Eigen::Vector3d v = srgb_matrices().from_xyz * as_vector(xyz);
  return {v.x(), v.y(), v.z()};
}

LabColor xyz_to_lab(const XyzColor& xyz, const Illuminant& illuminant) {
  if (xyz.illuminant != illuminant.name()) {
    throw DomainError("XYZ tagged " + std::string(Illuminant::get(xyz.illuminant).label()) +
                      " cannot be referenced to " + std::string(illuminant.label()) + " without adaptation");
  }
  if (xyz.x < 0.0 || xyz.y < 0.0 || xyz.z < 0.0) throw DomainError("negative tristimulus value");
  const XyzColor white = illuminant.white_point();
  const double fx = lab_f(xyz.x / white.x);
  const double fy = lab_f(xyz.y / white.y);
  const double fz = lab_f(xyz.z / white.z);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz), illuminant.name()};
}

XyzColor lab_to_xyz(const LabColor& lab) {
  const XyzColor white = Illuminant::get(lab.illuminant).white_point();
  const double fy = (lab.l + 16.0) / 116.0;
  const double fx = fy + lab.a / 500.0;
  const double fz = fy - lab.b / 200.0;
  // L* is inverted directly so that the neutral axis stays exact.
  const double yr = lab.l > kKappa * kEpsilon ? fy * fy * fy : lab.l / kKappa;
  return {lab_f_inverse(fx) * white.x, yr * white.y, lab_f_inverse(fz) * white.z, lab.illuminant};
}

LchColor lab_to_lch(const LabColor& lab) noexcept {
  const double c = std::hypot(lab.a, lab.b);
  const double h = (lab.a == 0.0 && lab.b == 0.0) ? 0.0 : normalize_degrees(std::atan2(lab.b, lab.a) * 180.0 / std::numbers::pi);
  return {lab.l, c, h, lab.illuminant};
}

LabColor lch_to_lab(const LchColor& lch) noexcept {
  const double rad = lch.h * std::numbers::pi / 180.0;
  return {lch.l, lch.c * std::cos(rad), lch.c * std::sin(rad), lch.illuminant};
}

CmykColor srgb_to_cmyk(const SrgbColor& c) noexcept {
  const auto n = c.normalized();
  const double k = 1.0 - std::max({n[0], n[1], n[2]});
  if (k >= 1.0) return {0.0, 0.0, 0.0, 1.0};
  const double denom = 1.0 - k;
  return {(1.0 - n[0] - k) / denom, (1.0 - n[1] - k) / denom, (1.0 - n[2] - k) / denom, k};
}

XyzColor xyy_to_xyz(double x, double y, double big_y, IlluminantName illuminant) {
  if (y <= 0.0) {
    if (big_y == 0.0) return {0.0, 0.0, 0.0, illuminant};
    throw DomainError("xyY chromaticity y must be positive");
  }
  return {x * big_y / y, big_y, (1.0 - x - y) * big_y / y, illuminant};
}

XyzColor adapt_white_point(const XyzColor& xyz, const Illuminant& from, const Illuminant& to) {
  if (xyz.illuminant != from.name()) {
    throw DomainError("XYZ is tagged " + std::string(Illuminant::get(xyz.illuminant).label()) +
                      ", not the adaptation source " + std::string(from.label()));
  }
  if (from == to) return xyz;
  const Eigen::Matrix3d& m = bradford();
  const Eigen::Vector3d src = m * as_vector(from.white_point());
  const Eigen::Vector3d dst = m * as_vector(to.white_point());
  const Eigen::Vector3d cone = (m * as_vector(xyz)).cwiseProduct(dst.cwiseQuotient(src));
  return as_xyz(m.inverse() * cone, to.name());
}

LabColor srgb_to_lab(const SrgbColor& c, const Illuminant& illuminant) {
  XyzColor xyz = linear_to_xyz(srgb_to_linear(c));
  if (illuminant.name() != IlluminantName::D65) xyz = adapt_white_point(xyz, Illuminant::d65(), illuminant);
  return xyz_to_lab(xyz, illuminant);
}

SrgbEncoding lab_to_srgb(const LabColor& lab) {
  XyzColor xyz = lab_to_xyz(lab);
  if (xyz.illuminant != IlluminantName::D65) {
    xyz = adapt_white_point(xyz, Illuminant::get(xyz.illuminant), Illuminant::d65());
  }
  return linear_to_srgb(xyz_to_linear(xyz));
}

}  // namespace soilcolor
