#include "soilcolor/dataset.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "soilcolor/csv.hpp"
#include "soilcolor/error.hpp"

namespace soilcolor {

namespace {

// Standard normal deviates by Box-Muller over raw 64-bit engine output;
// unlike std::normal_distribution the sequence is identical on every
// standard library.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  // Uniform on (0, 1) with 53 random bits.
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

  std::mt19937_64 engine_;
};

std::string header_value(const std::vector<std::string>& comments, std::string_view key) {
  for (const std::string& c : comments) {
    const auto colon = c.find(':');
    if (colon == std::string::npos) continue;
    std::string k = c.substr(0, colon);
    while (!k.empty() && std::isspace(static_cast<unsigned char>(k.back()))) k.pop_back();
    if (k != key) continue;
    std::string v = c.substr(colon + 1);
    const auto first = v.find_first_not_of(" \t");
    return first == std::string::npos ? std::string{} : v.substr(first);
  }
  return {};
}

}  // namespace

bool operator==(const Observation& a, const Observation& b) {
  if (!(a.truth == b.truth) || a.observed.index() != b.observed.index()) return false;
  if (const auto* ca = std::get_if<SrgbColor>(&a.observed)) return *ca == std::get<SrgbColor>(b.observed);
  const auto& la = std::get<LabColor>(a.observed);
  const auto& lb = std::get<LabColor>(b.observed);
  return la.l == lb.l && la.a == lb.a && la.b == lb.b && la.illuminant == lb.illuminant;
}

LabColor observed_lab(const Observation& obs, const Illuminant& illuminant) {
  if (const auto* rgb = std::get_if<SrgbColor>(&obs.observed)) return srgb_to_lab(*rgb, illuminant);
  const LabColor& lab = std::get<LabColor>(obs.observed);
  if (lab.illuminant == illuminant.name()) return lab;
  const XyzColor xyz = adapt_white_point(lab_to_xyz(lab), Illuminant::get(lab.illuminant), illuminant);
  return xyz_to_lab(xyz, illuminant);
}

CaptureSet::CaptureSet(std::string label, std::string device, std::string session)
    : label_(std::move(label)), device_(std::move(device)), session_(std::move(session)) {}

void CaptureSet::add(Observation obs) {
  if (find(obs.truth) != nullptr) throw DomainError("duplicate truth code " + format(obs.truth));
  observations_.push_back(std::move(obs));
}

const Observation* CaptureSet::find(const MunsellCode& truth) const {
  for (const Observation& o : observations_) {
    if (o.truth == truth) return &o;
  }
  return nullptr;
}

CaptureSet load_capture_set(std::istream& manifest, const std::filesystem::path& image_dir,
                            const ManifestOptions& options) {
  const csv::Table table = csv::read(manifest);
  const char* columns[] = {"truth", "image_path", "R", "G", "B", "L", "a", "b"};
  std::size_t col[8];
  if (table.header.empty() && table.rows.empty()) throw LoadError("empty capture set");
  for (int i = 0; i < 8; ++i) {
    auto c = table.column(columns[i]);
    if (!c) throw LoadError(std::string("manifest is missing column '") + columns[i] + "'");
    col[i] = *c;
  }
  if (table.rows.empty()) throw LoadError("empty capture set");

  auto pick = [&](const std::string& opt, std::string_view key) {
    return opt.empty() ? header_value(table.comments, key) : opt;
  };
  CaptureSet set(pick(options.label, "label"), pick(options.device, "device"), pick(options.session, "session"));

  for (const csv::Row& row : table.rows) {
    const auto& f = row.fields;
    Observation obs;
    try {
      obs.truth = parse_munsell(f[col[0]]);
    } catch (const ParseError& e) {
      throw LoadError(e.what(), row.line);
    }
    const bool has_image = !f[col[1]].empty();
    const int rgb_filled = !f[col[2]].empty() + !f[col[3]].empty() + !f[col[4]].empty();
    const int lab_filled = !f[col[5]].empty() + !f[col[6]].empty() + !f[col[7]].empty();
    if ((rgb_filled != 0 && rgb_filled != 3) || (lab_filled != 0 && lab_filled != 3)) {
      throw LoadError("partially filled color triple", row.line);
    }
    if (static_cast<int>(has_image) + (rgb_filled == 3) + (lab_filled == 3) != 1) {
      throw LoadError("exactly one of image_path, R/G/B or L/a/b must be given", row.line);
    }

    if (has_image) {
      const std::filesystem::path path = image_dir / f[col[1]];
      Raster raster;
      try {
        raster = read_image(path.string());
      } catch (const IoError& e) {
        throw LoadError(e.what(), row.line);
      }
      const ImagePatch patch = options.region ? ImagePatch(std::move(raster), *options.region)
                                              : ImagePatch(std::move(raster));
      obs.observed = extract_patch_color(patch, options.statistic);
    } else if (rgb_filled == 3) {
      try {
        obs.observed = SrgbColor::from_ints(csv::to_int(f[col[2]], row.line, "R"), csv::to_int(f[col[3]], row.line, "G"),
                                            csv::to_int(f[col[4]], row.line, "B"));
      } catch (const DomainError& e) {
        throw LoadError(e.what(), row.line);
      }
    } else {
      obs.observed = LabColor{csv::to_double(f[col[5]], row.line, "L"), csv::to_double(f[col[6]], row.line, "a"),
                              csv::to_double(f[col[7]], row.line, "b"), IlluminantName::D65};
    }
    try {
      set.add(std::move(obs));
    } catch (const DomainError& e) {
      throw LoadError(e.what(), row.line);
    }
  }
  return set;
}

CaptureSet load_capture_set_file(const std::filesystem::path& manifest, const std::filesystem::path& image_dir,
                                 ManifestOptions options) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest '" + manifest.string() + "'");
  const std::filesystem::path dir = image_dir.empty() ? manifest.parent_path() : image_dir;
  CaptureSet set;
  try {
    set = load_capture_set(in, dir, options);
  } catch (const LoadError& e) {
    throw e.in_file(manifest.string());
  }
  if (set.label().empty()) {
    CaptureSet relabeled(manifest.stem().string(), set.device(), set.session());
    for (const Observation& o : set.observations()) relabeled.add(o);
    return relabeled;
  }
  return set;
}

void write_capture_set(std::ostream& out, const CaptureSet& set) {
  if (!set.label().empty()) out << "# label: " << set.label() << '\n';
  if (!set.device().empty()) out << "# device: " << set.device() << '\n';
  if (!set.session().empty()) out << "# session: " << set.session() << '\n';
  out << "truth,image_path,R,G,B,L,a,b\n";
  for (const Observation& o : set.observations()) {
    out << format(o.truth) << ',';
    if (const auto* rgb = std::get_if<SrgbColor>(&o.observed)) {
      out << fmt::format(",{},{},{},,,\n", rgb->r(), rgb->g(), rgb->b());
    } else {
      const auto& lab = std::get<LabColor>(o.observed);
      // Shortest round-trip representation.
      out << fmt::format(",,,,{},{},{}\n", lab.l, lab.a, lab.b);
    }
  }
}

CaptureSet synthesize_capture_set(const ChipDatabase& db, double noise_sigma, std::array<double, 3> offset,
                                  std::uint64_t seed, std::string label, std::string device) {
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ParameterError("noise sigma must be >= 0, got " + std::to_string(noise_sigma));
  }
  NormalSource normal(seed);
  CaptureSet set(std::move(label), std::move(device));
  for (const Chip& chip : db.chips()) {
    LabColor lab = chip.lab;
    lab.l = lab.l + offset[0] + noise_sigma * normal();
    lab.a = lab.a + offset[1] + noise_sigma * normal();
    lab.b = lab.b + offset[2] + noise_sigma * normal();
    set.add({chip.code, lab});
  }
  return set;
}

}  // namespace soilcolor
