#include "soilcolor/delta_e.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "soilcolor/error.hpp"

namespace soilcolor {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void require_same_illuminant(const LabColor& reference, const LabColor& sample) {
  if (reference.illuminant != sample.illuminant) {
    throw DomainError("color difference between " + std::string(Illuminant::get(reference.illuminant).label()) +
                      " and " + std::string(Illuminant::get(sample.illuminant).label()) + " colors");
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string("delta E parameter ") + name + " must be positive, got " + std::to_string(v));
  }
}

double hue_degrees(double a, double b) {
  if (a == 0.0 && b == 0.0) return 0.0;
  double h = std::atan2(b, a) / kDegToRad;
  return h < 0.0 ? h + 360.0 : h;
}

// Squared hue difference, floored at zero against cancellation.
double delta_h_squared(const LabColor& r, const LabColor& s, double delta_c) {
  const double da = r.a - s.a;
  const double db = r.b - s.b;
  return std::max(0.0, da * da + db * db - delta_c * delta_c);
}

double de1976(const LabColor& r, const LabColor& s) {
  const double dl = r.l - s.l;
  const double da = r.a - s.a;
  const double db = r.b - s.b;
  return std::sqrt(dl * dl + da * da + db * db);
}

double de1994(const LabColor& r, const LabColor& s, const Cie1994Params& p) {
  const double c1 = std::hypot(r.a, r.b);
  const double c2 = std::hypot(s.a, s.b);
  const double dl = r.l - s.l;
  const double dc = c1 - c2;
  const double dh2 = delta_h_squared(r, s, dc);
  const double sc = 1.0 + p.k1 * c1;
  const double sh = 1.0 + p.k2 * c1;
  const double tl = dl / p.kl;
  const double tc = dc / sc;
  return std::sqrt(tl * tl + tc * tc + dh2 / (sh * sh));
}

double de2000(const LabColor& r, const LabColor& s, const Ciede2000Params& p) {
  constexpr double kPow25To7 = 6103515625.0;  // 25^7

  const double c1 = std::hypot(r.a, r.b);
  const double c2 = std::hypot(s.a, s.b);
  const double c_mean7 = std::pow((c1 + c2) / 2.0, 7.0);
  const double g = 0.5 * (1.0 - std::sqrt(c_mean7 / (c_mean7 + kPow25To7)));

  const double a1p = (1.0 + g) * r.a;
  const double a2p = (1.0 + g) * s.a;
  const double c1p = std::hypot(a1p, r.b);
  const double c2p = std::hypot(a2p, s.b);
  const double h1p = hue_degrees(a1p, r.b);
  const double h2p = hue_degrees(a2p, s.b);

  const double dlp = s.l - r.l;
  const double dcp = c2p - c1p;

  const double chroma_product = c1p * c2p;
  double dhp = 0.0;
  if (chroma_product != 0.0) {
    dhp = h2p - h1p;
    if (dhp > 180.0) {
      dhp -= 360.0;
    } else if (dhp < -180.0) {
      dhp += 360.0;
    }
  }
  const double dHp = 2.0 * std::sqrt(chroma_product) * std::sin(dhp * kDegToRad / 2.0);

  const double l_mean = (r.l + s.l) / 2.0;
  const double cp_mean = (c1p + c2p) / 2.0;
  double hp_mean = h1p + h2p;
  if (chroma_product != 0.0) {
    if (std::abs(h1p - h2p) <= 180.0) {
      hp_mean /= 2.0;
    } else if (hp_mean < 360.0) {
      hp_mean = (hp_mean + 360.0) / 2.0;
    } else {
      hp_mean = (hp_mean - 360.0) / 2.0;
    }
  }

  const double t = 1.0 - 0.17 * std::cos((hp_mean - 30.0) * kDegToRad) + 0.24 * std::cos(2.0 * hp_mean * kDegToRad) +
                   0.32 * std::cos((3.0 * hp_mean + 6.0) * kDegToRad) - 0.20 * std::cos((4.0 * hp_mean - 63.0) * kDegToRad);
  const double dtheta = 30.0 * std::exp(-std::pow((hp_mean - 275.0) / 25.0, 2.0));
  const double cp_mean7 = std::pow(cp_mean, 7.0);
  const double rc = 2.0 * std::sqrt(cp_mean7 / (cp_mean7 + kPow25To7));
  const double l50 = (l_mean - 50.0) * (l_mean - 50.0);
  const double sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
  const double sc = 1.0 + 0.045 * cp_mean;
  const double sh = 1.0 + 0.015 * cp_mean * t;
  const double rt = -std::sin(2.0 * dtheta * kDegToRad) * rc;

  const double tl = dlp / (p.kl * sl);
  const double tc = dcp / (p.kc * sc);
  const double th = dHp / (p.kh * sh);
  return std::sqrt(std::max(0.0, tl * tl + tc * tc + th * th + rt * tc * th));
}

double decmc(const LabColor& r, const LabColor& s, double l, double c) {
  const double c1 = std::hypot(r.a, r.b);
  const double c2 = std::hypot(s.a, s.b);
  const double dl = r.l - s.l;
  const double dc = c1 - c2;
  const double dh2 = delta_h_squared(r, s, dc);

  const double sl = r.l < 16.0 ? 0.511 : 0.040975 * r.l / (1.0 + 0.01765 * r.l);
  const double sc = 0.0638 * c1 / (1.0 + 0.0131 * c1) + 0.638;
  const double h1 = hue_degrees(r.a, r.b);
  const double t = (h1 >= 164.0 && h1 <= 345.0) ? 0.56 + std::abs(0.2 * std::cos((h1 + 168.0) * kDegToRad))
                                                 : 0.36 + std::abs(0.4 * std::cos((h1 + 35.0) * kDegToRad));
  const double c1_4 = c1 * c1 * c1 * c1;
  const double f = std::sqrt(c1_4 / (c1_4 + 1900.0));
  const double sh = sc * (f * t + 1.0 - f);

  const double tl = dl / (l * sl);
  const double tc = dc / (c * sc);
  return std::sqrt(tl * tl + tc * tc + dh2 / (sh * sh));
}

}  // namespace

DeltaEMethod DeltaEMethod::cie1994(Cie1994Params p) {
  require_positive(p.kl, "kL");
  require_positive(p.k1, "K1");
  require_positive(p.k2, "K2");
  return DeltaEMethod(p);
}

DeltaEMethod DeltaEMethod::ciede2000(Ciede2000Params p) {
  require_positive(p.kl, "kL");
  require_positive(p.kc, "kC");
  require_positive(p.kh, "kH");
  return DeltaEMethod(p);
}

DeltaEMethod DeltaEMethod::cmc(double l, double c) {
  require_positive(l, "l");
  require_positive(c, "c");
  return DeltaEMethod(CmcParams{l, c});
}

DeltaEMethod DeltaEMethod::parse(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (t == "de1976" || t == "cie1976" || t == "cie76" || t == "de76") return cie1976();
  if (t == "de1994" || t == "cie1994" || t == "cie94" || t == "de94") return cie1994();
  if (t == "de2000" || t == "cie2000" || t == "ciede2000" || t == "de00") return ciede2000();
  if (t == "cmc" || t == "cmc2:1") return cmc(2.0, 1.0);
  if (t == "cmc1:1") return cmc(1.0, 1.0);
  throw ParseError("unknown color difference method '" + std::string(text) +
                       "' (expected de1976, de1994, de2000 or cmc)",
                   std::string(text));
}

DeltaEKind DeltaEMethod::kind() const noexcept { return static_cast<DeltaEKind>(params_.index()); }

std::string DeltaEMethod::token() const {
  switch (kind()) {
    case DeltaEKind::DE1976: return "de1976";
    case DeltaEKind::DE1994: return "de1994";
    case DeltaEKind::DE2000: return "de2000";
    case DeltaEKind::CMC: return "cmc";
  }
  return "?";
}

std::string DeltaEMethod::display_name() const {
  switch (kind()) {
    case DeltaEKind::DE1976: return "CIE1976";
    case DeltaEKind::DE1994: return "CIE1994";
    case DeltaEKind::DE2000: return "CIE2000";
    case DeltaEKind::CMC: return "CMC";
  }
  return "?";
}

bool operator==(const DeltaEMethod& a, const DeltaEMethod& b) {
  if (a.kind() != b.kind()) return false;
  return std::visit(
      [&b](const auto& pa) {
        using T = std::decay_t<decltype(pa)>;
        const auto& pb = std::get<T>(b.params_);
        if constexpr (std::is_same_v<T, Cie1976Params>) {
          return true;
        } else if constexpr (std::is_same_v<T, Cie1994Params>) {
          return pa.kl == pb.kl && pa.k1 == pb.k1 && pa.k2 == pb.k2;
        } else if constexpr (std::is_same_v<T, Ciede2000Params>) {
          return pa.kl == pb.kl && pa.kc == pb.kc && pa.kh == pb.kh;
        } else {
          return pa.l == pb.l && pa.c == pb.c;
        }
      },
      a.params_);
}

DifferenceResult delta_e_1976(const LabColor& reference, const LabColor& sample) {
  require_same_illuminant(reference, sample);
  return {de1976(reference, sample), DeltaEMethod::cie1976(), reference, sample};
}

DifferenceResult delta_e_1994(const LabColor& reference, const LabColor& sample, const Cie1994Params& params) {
  require_same_illuminant(reference, sample);
  auto method = DeltaEMethod::cie1994(params);
  return {de1994(reference, sample, params), method, reference, sample};
}

DifferenceResult delta_e_2000(const LabColor& reference, const LabColor& sample, const Ciede2000Params& params) {
  require_same_illuminant(reference, sample);
  auto method = DeltaEMethod::ciede2000(params);
  return {de2000(reference, sample, params), method, reference, sample};
}

DifferenceResult delta_e_cmc(const LabColor& reference, const LabColor& sample, double l, double c) {
  require_same_illuminant(reference, sample);
  auto method = DeltaEMethod::cmc(l, c);
  return {decmc(reference, sample, l, c), method, reference, sample};
}

double delta_e_value(const DeltaEMethod& method, const LabColor& reference, const LabColor& sample) {
  require_same_illuminant(reference, sample);
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Cie1976Params>) {
          return de1976(reference, sample);
        } else if constexpr (std::is_same_v<T, Cie1994Params>) {
          return de1994(reference, sample, p);
        } else if constexpr (std::is_same_v<T, Ciede2000Params>) {
          return de2000(reference, sample, p);
        } else {
          return decmc(reference, sample, p.l, p.c);
        }
      },
      method.params());
}

DifferenceResult delta_e(const DeltaEMethod& method, const LabColor& reference, const LabColor& sample) {
  return {delta_e_value(method, reference, sample), method, reference, sample};
}

}  // namespace soilcolor
