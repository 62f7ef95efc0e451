#include "soilcolor/munsell.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <regex>

#include "soilcolor/error.hpp"

namespace soilcolor {

namespace {

constexpr std::array<std::string_view, 10> kFamilyNames = {"R", "YR", "Y", "GY", "G", "BG", "B", "PB", "P", "RP"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Strict decimal number: digits with an optional fractional part.
bool parse_number(std::string_view token, double& out) {
  static const std::regex kNumber(R"(\d+(\.\d+)?)");
  const std::string t(token);
  if (!std::regex_match(t, kNumber)) return false;
  out = std::stod(t);
  return true;
}

template <std::size_t N>
bool is_level(double v, const std::array<double, N>& levels) {
  return std::find(levels.begin(), levels.end(), v) != levels.end();
}

HueFamily parse_family(std::string_view token) {
  std::string upper(token);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (kFamilyNames[i] == upper) return static_cast<HueFamily>(i);
  }
  throw ParseError("unknown hue family '" + std::string(token) + "'", std::string(token));
}

double parse_hue_step(std::string_view token) {
  double step = 0.0;
  if (!parse_number(token, step) || !is_level(step, kHueSteps)) {
    throw ParseError("hue step '" + std::string(token) + "' not in {2.5, 5, 7.5, 10}", std::string(token));
  }
  return step;
}

double parse_value(std::string_view token) {
  double v = 0.0;
  if (!parse_number(token, v) || !is_level(v, kChartValues)) {
    throw ParseError("Munsell value '" + std::string(token) + "' is not a chart level", std::string(token));
  }
  return v;
}

double parse_chroma(std::string_view token) {
  double c = 0.0;
  if (!parse_number(token, c) || !is_level(c, kChartChromas)) {
    throw ParseError("Munsell chroma '" + std::string(token) + "' is not a chart level", std::string(token));
  }
  return c;
}

std::string format_number(double v) {
  // Chart levels are multiples of 0.5, so one decimal is always exact.
  if (v == std::floor(v)) return std::to_string(static_cast<long long>(v));
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 1);
  return std::string(buf, end);
}

}  // namespace

std::string_view to_string(HueFamily family) noexcept { return kFamilyNames[static_cast<std::size_t>(family)]; }

double MunsellHue::circle_position() const noexcept {
  const double pos = static_cast<int>(family) * 10.0 + step;
  return pos >= 100.0 ? pos - 100.0 : pos;
}

MunsellHue parse_munsell_hue(std::string_view text) {
  static const std::regex kHue(R"(^\s*([0-9.]+)\s*([A-Za-z]+)\s*$)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kHue)) {
    throw ParseError("malformed Munsell hue '" + trim(text) + "'", trim(text));
  }
  const double step = parse_hue_step(m.str(1));
  return {step, parse_family(m.str(2))};
}

std::string format(const MunsellHue& hue) { return format_number(hue.step) + std::string(to_string(hue.family)); }

std::partial_ordering canonical_compare(const MunsellCode& a, const MunsellCode& b) noexcept {
  if (auto c = a.hue <=> b.hue; c != 0) return c;
  if (auto c = a.value <=> b.value; c != 0) return c;
  return a.chroma <=> b.chroma;
}

MunsellCode parse_munsell(std::string_view text) {
  // hue-step family [sep] value (/|-) chroma
  static const std::regex kCode(R"(^\s*([0-9.]+)\s*([A-Za-z]+)\s*[- ]?\s*([0-9.]+)\s*[/-]\s*([0-9.]+)\s*$)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kCode)) {
    throw ParseError("malformed Munsell notation '" + trim(text) + "'", trim(text));
  }
  MunsellCode code;
  code.hue.step = parse_hue_step(m.str(1));
  code.hue.family = parse_family(m.str(2));
  code.value = parse_value(m.str(3));
  code.chroma = parse_chroma(m.str(4));
  return code;
}

MunsellCode make_munsell(std::string_view hue, std::string_view value, std::string_view chroma) {
  MunsellCode code;
  code.hue = parse_munsell_hue(hue);
  code.value = parse_value(trim(value));
  code.chroma = parse_chroma(trim(chroma));
  return code;
}

std::string format(const MunsellCode& code) {
  return format(code.hue) + " " + format_number(code.value) + "/" + format_number(code.chroma);
}

double hue_circle_distance(const MunsellHue& a, const MunsellHue& b) noexcept {
  const double d = std::abs(a.circle_position() - b.circle_position());
  return std::min(d, 100.0 - d);
}

const std::array<MunsellHue, 7>& default_pages() {
  static const std::array<MunsellHue, 7> pages = {{{10.0, HueFamily::R},
                                                   {2.5, HueFamily::YR},
                                                   {5.0, HueFamily::YR},
                                                   {7.5, HueFamily::YR},
                                                   {10.0, HueFamily::YR},
                                                   {2.5, HueFamily::Y},
                                                   {5.0, HueFamily::Y}}};
  return pages;
}

}  // namespace soilcolor
