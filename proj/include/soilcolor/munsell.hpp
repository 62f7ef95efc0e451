#pragma once

// Munsell notation: hue pages, chip codes, and hue-circle arithmetic.

#include <array>
#include <compare>
#include <string>
#include <string_view>

namespace soilcolor {

// Ordered around the hue circle starting at red.
enum class HueFamily { R, YR, Y, GY, G, BG, B, PB, P, RP };

inline constexpr std::array<double, 4> kHueSteps = {2.5, 5.0, 7.5, 10.0};
// Value levels found on soil chart pages (8.5 to 9.5 only on white pages).
inline constexpr std::array<double, 11> kChartValues = {2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 8.5, 9.0, 9.5};
inline constexpr std::array<double, 6> kChartChromas = {1.0, 2.0, 3.0, 4.0, 6.0, 8.0};

std::string_view to_string(HueFamily family) noexcept;

// A hue designation such as "5YR"; identifies one chart page.
struct MunsellHue {
  double step = 5.0;
  HueFamily family = HueFamily::YR;

  // Position on the 100-step hue circle, in [0, 100). R family starts at 0,
  // so 10R -> 10, 2.5YR -> 12.5, 5Y -> 25; 10RP wraps to 0.
  double circle_position() const noexcept;

  friend bool operator==(const MunsellHue&, const MunsellHue&) = default;
  // Orders by circle position.
  friend std::partial_ordering operator<=>(const MunsellHue& a, const MunsellHue& b) noexcept {
    return a.circle_position() <=> b.circle_position();
  }
};

// Parses "5YR", "2.5 YR", "10r". Throws ParseError.
MunsellHue parse_munsell_hue(std::string_view text);
std::string format(const MunsellHue& hue);

struct MunsellCode {
  MunsellHue hue;
  double value = 5.0;
  double chroma = 6.0;

  friend bool operator==(const MunsellCode&, const MunsellCode&) = default;
};

// Canonical chip ordering: hue circle position, then value, then chroma.
std::partial_ordering canonical_compare(const MunsellCode& a, const MunsellCode& b) noexcept;
struct CanonicalLess {
  bool operator()(const MunsellCode& a, const MunsellCode& b) const noexcept { return canonical_compare(a, b) < 0; }
  bool operator()(const MunsellHue& a, const MunsellHue& b) const noexcept { return a < b; }
};

// Accepts "5YR 5/6", "2.5YR-8-1", "10R 4/8" and "5YR5/6". Throws ParseError
// naming the offending token for an unknown family, a hue step outside
// {2.5, 5, 7.5, 10}, or a value/chroma that is not a chart level.
MunsellCode parse_munsell(std::string_view text);
// Builds a code from separate columns; same validation as parse_munsell.
MunsellCode make_munsell(std::string_view hue, std::string_view value, std::string_view chroma);

// Canonical form "5YR 5/6".
std::string format(const MunsellCode& code);

// Position of the code's hue on the 100-step circle.
inline double hue_degrees(const MunsellCode& code) noexcept { return code.hue.circle_position(); }

// Shortest distance between two hues around the circle, in [0, 50].
double hue_circle_distance(const MunsellHue& a, const MunsellHue& b) noexcept;

// The seven soil chart pages evaluated by default:
// 10R, 2.5YR, 5YR, 7.5YR, 10YR, 2.5Y, 5Y (circle order).
const std::array<MunsellHue, 7>& default_pages();

}  // namespace soilcolor
