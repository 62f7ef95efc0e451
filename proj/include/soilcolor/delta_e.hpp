#pragma once

// Color-difference formulas: CIE76, CIE94, CIEDE2000 and CMC(l:c).
//
// Argument order matters: the first color is always the reference
// (standard) and the second the sample. CIE94 and CMC weight the
// differences by the reference chroma/hue, so swapping the arguments
// changes their result.

#include <string>
#include <string_view>
#include <variant>

#include "soilcolor/color.hpp"

namespace soilcolor {

struct Cie1976Params {};

// Graphic-arts constants by default.
struct Cie1994Params {
  double kl = 1.0;
  double k1 = 0.045;
  double k2 = 0.015;
};

struct Ciede2000Params {
  double kl = 1.0;
  double kc = 1.0;
  double kh = 1.0;
};

// Lightness:chroma ratio; 2:1 is the acceptability setting.
struct CmcParams {
  double l = 2.0;
  double c = 1.0;
};

enum class DeltaEKind { DE1976, DE1994, DE2000, CMC };

class DeltaEMethod {
 public:
  using Params = std::variant<Cie1976Params, Cie1994Params, Ciede2000Params, CmcParams>;

  // Defaults to CIEDE2000 with kL = kC = kH = 1.
  DeltaEMethod() : params_(Ciede2000Params{}) {}

  static DeltaEMethod cie1976() { return DeltaEMethod(Cie1976Params{}); }
  // The factories below throw ParameterError for non-positive parameters.
  static DeltaEMethod cie1994(Cie1994Params p = {});
  static DeltaEMethod ciede2000(Ciede2000Params p = {});
  static DeltaEMethod cmc(double l = 2.0, double c = 1.0);

  // "de1976", "de1994", "de2000", "cmc" (also "cie76", "cie94", ...,
  // "cmc2:1"), case-insensitive. Throws ParseError.
  static DeltaEMethod parse(std::string_view text);

  DeltaEKind kind() const noexcept;
  const Params& params() const noexcept { return params_; }
  // CLI token, e.g. "de2000".
  std::string token() const;
  // Display name as used in accuracy tables, e.g. "CIE2000".
  std::string display_name() const;

  friend bool operator==(const DeltaEMethod& a, const DeltaEMethod& b);

 private:
  explicit DeltaEMethod(Params p) : params_(p) {}
  Params params_;
};

struct DifferenceResult {
  double value = 0.0;
  DeltaEMethod method;
  LabColor reference;
  LabColor sample;
};

// Each formula throws DomainError when the two colors carry different
// illuminant tags.
DifferenceResult delta_e_1976(const LabColor& reference, const LabColor& sample);
DifferenceResult delta_e_1994(const LabColor& reference, const LabColor& sample, const Cie1994Params& params = {});
DifferenceResult delta_e_2000(const LabColor& reference, const LabColor& sample, const Ciede2000Params& params = {});
DifferenceResult delta_e_cmc(const LabColor& reference, const LabColor& sample, double l = 2.0, double c = 1.0);

DifferenceResult delta_e(const DeltaEMethod& method, const LabColor& reference, const LabColor& sample);
// Scalar-only variant of delta_e for inner loops.
double delta_e_value(const DeltaEMethod& method, const LabColor& reference, const LabColor& sample);

}  // namespace soilcolor
