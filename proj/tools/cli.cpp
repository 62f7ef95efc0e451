#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "soilcolor/analysis.hpp"
#include "soilcolor/chip_database.hpp"
#include "soilcolor/color.hpp"
#include "soilcolor/dataset.hpp"
#include "soilcolor/delta_e.hpp"
#include "soilcolor/diagnostics.hpp"
#include "soilcolor/error.hpp"
#include "soilcolor/image.hpp"
#include "soilcolor/munsell.hpp"
#include "soilcolor/report.hpp"

namespace soilcolor::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Settings shared by every subcommand. The defaults are the recommended
// pipeline: bundled chips, D65, CIEDE2000.
struct Config {
  std::string db_path;
  std::string renotation_path;
  std::string aggregate = "mean";
  std::string illuminant = "D65";
  std::string method = "de2000";
  std::string out_dir = ".";
  std::uint64_t seed = 0;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const char* flag) {
  const auto parts = split_list(text);
  std::vector<double> out;
  for (const auto& p : parts) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size() || !std::isfinite(v)) {
      throw UsageError(fmt::format("{}: '{}' is not a number", flag, p));
    }
    out.push_back(v);
  }
  if (out.size() != count) {
    throw UsageError(fmt::format("{} expects {} comma-separated numbers, got '{}'", flag, count, text));
  }
  return out;
}

SrgbColor parse_rgb(const std::string& text) {
  const auto v = parse_numbers(text, 3, "--rgb");
  for (double c : v) {
    if (c != std::floor(c) || c < 0 || c > 255) {
      throw UsageError("--rgb channels must be integers in [0, 255], got '" + text + "'");
    }
  }
  return SrgbColor::from_ints(int(v[0]), int(v[1]), int(v[2]));
}

LabColor parse_lab(const std::string& text, IlluminantName illuminant) {
  const auto v = parse_numbers(text, 3, "--lab");
  return {v[0], v[1], v[2], illuminant};
}

std::vector<MunsellHue> parse_pages(const std::string& text) {
  std::vector<MunsellHue> pages;
  for (const auto& p : split_list(text)) pages.push_back(parse_munsell_hue(p));
  return pages;
}

// Four decimals with negative zero folded into zero.
std::string fixed4(double v) {
  std::string s = fmt::format("{:.4f}", v);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

// Up to four decimals, trailing zeros dropped ("1", "0.5").
std::string compact(double v) {
  std::string s = fixed4(v);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

void add_database_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--db", cfg.db_path, "Chip scan CSV (hue,value,chroma,L,a,b,replicate); bundled chips when omitted");
  cmd->add_option("--renotation", cfg.renotation_path,
                  "Renotation table (hue,value,chroma,x,y,Y under illuminant C) to build the chips from");
  cmd->add_option("--aggregate", cfg.aggregate, "Replicate aggregation for --db scans")
      ->check(CLI::IsMember({"mean", "median"}))
      ->capture_default_str();
  cmd->add_option("--illuminant", cfg.illuminant, "Reference white for L*a*b*")
      ->check(CLI::IsMember({"D65", "C", "D50"}, CLI::ignore_case))
      ->capture_default_str();
}

void add_out_option(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--out", cfg.out_dir, "Output directory (env SOILCOLOR_OUT)")
      ->envname("SOILCOLOR_OUT")
      ->capture_default_str();
}

ChipDatabase load_database(const Config& cfg) {
  const Illuminant& illuminant = Illuminant::parse(cfg.illuminant);
  if (!cfg.db_path.empty() && !cfg.renotation_path.empty()) {
    throw UsageError("--db and --renotation are mutually exclusive");
  }
  if (!cfg.db_path.empty()) {
    if (illuminant.name() != IlluminantName::D65) {
      throw ConfigError("chip scans are referenced to D65; --illuminant must be D65 with --db");
    }
    return load_chip_database_file(cfg.db_path, cfg.aggregate == "median" ? ReplicateAggregate::Median
                                                                           : ReplicateAggregate::Mean);
  }
  BuildOptions options;
  options.target = illuminant.name();
  if (!cfg.renotation_path.empty()) return build_chip_database_file(cfg.renotation_path, options);
  if (illuminant.name() == IlluminantName::D65) return bundled_chip_database();
  std::istringstream in{std::string(bundled_renotation_csv())};
  return build_chip_database(in, options);
}

fs::path output_path(const Config& cfg, const std::string& name) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir / name;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  writer(out);
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

std::string file_token(std::string text) {
  for (char& c : text) {
    if (c == '/' || c == ' ' || c == '\\') c = '-';
  }
  return text;
}

// ---------------------------------------------------------------------------

struct ConvertArgs {
  std::string rgb;
  std::string lab;
  std::string to = "lab";
  std::string illuminant = "D65";
};

int cmd_convert(const ConvertArgs& args) {
  const Illuminant& illuminant = Illuminant::parse(args.illuminant);
  if (args.rgb.empty() == args.lab.empty()) throw UsageError("convert needs exactly one of --rgb or --lab");

  std::string line;
  auto print3 = [](double a, double b, double c) { return fixed4(a) + " " + fixed4(b) + " " + fixed4(c); };
  auto print_cmyk = [](const CmykColor& k) {
    return compact(k.c) + " " + compact(k.m) + " " + compact(k.y) + " " + compact(k.k);
  };

  if (!args.rgb.empty()) {
    const SrgbColor rgb = parse_rgb(args.rgb);
    const LinearRgb linear = srgb_to_linear(rgb);
    XyzColor xyz = linear_to_xyz(linear);
    if (illuminant.name() != IlluminantName::D65) xyz = adapt_white_point(xyz, Illuminant::d65(), illuminant);
    if (args.to == "rgb") {
      line = fmt::format("{} {} {}", rgb.r(), rgb.g(), rgb.b());
    } else if (args.to == "linear") {
      line = print3(linear.r, linear.g, linear.b);
    } else if (args.to == "xyz") {
      line = print3(xyz.x, xyz.y, xyz.z);
    } else if (args.to == "cmyk") {
      line = print_cmyk(srgb_to_cmyk(rgb));
    } else {
      const LabColor lab = xyz_to_lab(xyz, illuminant);
      if (args.to == "lab") {
        line = print3(lab.l, lab.a, lab.b);
      } else {
        const LchColor lch = lab_to_lch(lab);
        line = print3(lch.l, lch.c, lch.h);
      }
    }
  } else {
    const LabColor lab = parse_lab(args.lab, illuminant.name());
    if (args.to == "lab") {
      line = print3(lab.l, lab.a, lab.b);
    } else if (args.to == "lch") {
      const LchColor lch = lab_to_lch(lab);
      line = print3(lch.l, lch.c, lch.h);
    } else if (args.to == "xyz") {
      const XyzColor xyz = lab_to_xyz(lab);
      line = print3(xyz.x, xyz.y, xyz.z);
    } else if (args.to == "linear") {
      XyzColor xyz = lab_to_xyz(lab);
      if (illuminant.name() != IlluminantName::D65) xyz = adapt_white_point(xyz, illuminant, Illuminant::d65());
      const LinearRgb linear = xyz_to_linear(xyz);
      line = print3(linear.r, linear.g, linear.b);
    } else {
      const SrgbEncoding enc = lab_to_srgb(lab);
      if (enc.clamped) warn("color is outside the sRGB gamut; channels were clamped");
      line = args.to == "rgb" ? fmt::format("{} {} {}", enc.color.r(), enc.color.g(), enc.color.b())
                              : print_cmyk(srgb_to_cmyk(enc.color));
    }
  }
  std::cout << line << '\n';
  return 0;
}

struct MatchArgs {
  std::string image;
  std::string region;
  std::string statistic = "mean";
  std::string rgb;
  std::string lab;
  std::size_t k = 5;
  std::string pages;
};

int cmd_match(const MatchArgs& args, const Config& cfg) {
  const int inputs = !args.image.empty() + !args.rgb.empty() + !args.lab.empty();
  if (inputs != 1) throw UsageError("match needs exactly one of --image, --rgb or --lab");
  if (args.k == 0) throw UsageError("--k must be at least 1");
  const Illuminant& illuminant = Illuminant::parse(cfg.illuminant);
  const DeltaEMethod method = DeltaEMethod::parse(cfg.method);
  const std::vector<MunsellHue> pages = parse_pages(args.pages);
  const ChipDatabase db = load_database(cfg);

  Observation query;
  if (!args.image.empty()) {
    Raster raster = read_image(args.image);
    const PatchStatistic statistic = args.statistic == "median" ? PatchStatistic::Median : PatchStatistic::Mean;
    if (args.region.empty()) {
      query.observed = extract_patch_color(ImagePatch(std::move(raster)), statistic);
    } else {
      const auto r = parse_numbers(args.region, 4, "--region");
      const Region region{int(r[0]), int(r[1]), int(r[2]), int(r[3])};
      query.observed = extract_patch_color(ImagePatch(std::move(raster), region), statistic);
    }
  } else if (!args.rgb.empty()) {
    query.observed = parse_rgb(args.rgb);
  } else {
    query.observed = parse_lab(args.lab, illuminant.name());
  }
  const LabColor lab = observed_lab(query, illuminant);
  const MatchResult result = match(lab, db, method, pages);

  std::cout << fmt::format("query L*a*b* ({}): {} {} {}\n", illuminant.label(), fixed4(lab.l), fixed4(lab.a),
                           fixed4(lab.b));
  std::cout << fmt::format("{:>4}  {:<14}{}\n", "rank", "code", method.display_name());
  const std::size_t n = std::min(args.k, result.ranked.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::cout << fmt::format("{:>4}  {:<14}{}\n", i + 1, format(result.ranked[i].code), fixed4(result.ranked[i].delta_e));
  }
  return 0;
}

int cmd_heatmap(const std::string& pages_text, const Config& cfg) {
  const auto pages = parse_pages(pages_text);
  if (pages.size() != 2) throw UsageError("--pages expects two hue pages, e.g. 2.5YR,5YR");
  const DeltaEMethod method = DeltaEMethod::parse(cfg.method);
  const ChipDatabase db = load_database(cfg);
  const HeatmapGrid grid = heatmap(db, pages[0], pages[1], method);

  const std::string stem = fmt::format("heatmap_{}_{}_{}", format(pages[0]), format(pages[1]), method.token());
  const fs::path csv_path = output_path(cfg, stem + ".csv");
  const fs::path json_path = output_path(cfg, stem + ".json");
  write_file(csv_path, [&](std::ostream& out) { write_heatmap_csv(out, grid); });
  write_file(json_path, [&](std::ostream& out) { out << heatmap_metadata_json(grid); });

  std::cout << "wrote " << csv_path.string() << '\n' << "wrote " << json_path.string() << '\n';
  if (!grid.centerline.empty()) {
    const CenterlineStats s = centerline_stats(grid);
    std::cout << fmt::format("centerline n={} mean={} stdev={} min={} max={}\n", s.count, fixed4(s.mean),
                             fixed4(s.stdev), fixed4(s.min), fixed4(s.max));
  }
  return 0;
}

struct EvalArgs {
  std::vector<std::string> sets;
  std::string methods = "de1976,de1994,de2000,cmc";
  std::string image_dir;
  std::string pages;
  std::string statistic = "mean";
  unsigned threads = 1;
};

int cmd_eval(const EvalArgs& args, const Config& cfg) {
  std::vector<DeltaEMethod> methods;
  for (const auto& m : split_list(args.methods)) methods.push_back(DeltaEMethod::parse(m));
  if (methods.empty()) throw UsageError("--methods is empty");
  EvaluateOptions options;
  if (!args.pages.empty()) options.pages = parse_pages(args.pages);
  options.illuminant = Illuminant::parse(cfg.illuminant).name();
  options.threads = std::max(1u, args.threads);

  const ChipDatabase db = load_database(cfg);
  std::vector<CaptureSet> sets;
  ManifestOptions manifest;
  manifest.statistic = args.statistic == "median" ? PatchStatistic::Median : PatchStatistic::Mean;
  for (const auto& path : args.sets) sets.push_back(load_capture_set_file(path, args.image_dir, manifest));

  const AccuracyReport report = evaluate(sets, db, methods, options);
  const fs::path accuracy_path = output_path(cfg, "accuracy.csv");
  const fs::path matches_path = output_path(cfg, "matches.csv");
  write_file(accuracy_path, [&](std::ostream& out) { write_accuracy_csv(out, report); });
  write_file(matches_path, [&](std::ostream& out) { write_match_records_csv(out, report); });
  write_accuracy_csv(std::cout, report);
  std::cout << "wrote " << accuracy_path.string() << '\n' << "wrote " << matches_path.string() << '\n';
  return 0;
}

struct SynthArgs {
  double sigma = 0.0;
  std::string offset = "0,0,0";
  std::string label;
  std::string device = "synthetic";
};

int cmd_synth(const SynthArgs& args, const Config& cfg) {
  const auto offset = parse_numbers(args.offset, 3, "--offset");
  const ChipDatabase db = load_database(cfg);
  const std::string label =
      args.label.empty() ? fmt::format("synthetic-s{}-seed{}", args.sigma, cfg.seed) : args.label;
  const CaptureSet set =
      synthesize_capture_set(db, args.sigma, {offset[0], offset[1], offset[2]}, cfg.seed, label, args.device);
  const fs::path path = output_path(cfg, file_token(label) + ".csv");
  write_file(path, [&](std::ostream& out) { write_capture_set(out, set); });
  std::cout << "wrote " << path.string() << " (" << set.size() << " observations)\n";
  return 0;
}

int cmd_scatter(const std::string& space_text, const Config& cfg) {
  const ScatterSpace space = parse_scatter_space(space_text);
  const ChipDatabase db = load_database(cfg);
  const ScatterExport exported = scatter_export(db, space);
  const std::string name(to_string(space));
  const fs::path csv_path = output_path(cfg, "scatter_" + name + ".csv");
  write_file(csv_path, [&](std::ostream& out) { write_scatter_csv(out, exported); });
  std::cout << "wrote " << csv_path.string() << " (" << exported.rows.size() << " chips)\n";
  if (db.pages().size() >= 2) {
    const ClumpingIndex index = clumping_index(exported);
    const fs::path json_path = output_path(cfg, "clumping_" + name + ".json");
    write_file(json_path, [&](std::ostream& out) { out << clumping_json(exported, index); });
    std::cout << "wrote " << json_path.string() << '\n'
              << fmt::format("clumping index ({}): {:.6f}\n", name, index.overall);
  }
  return 0;
}

struct DeviceArgs {
  std::vector<std::string> sets;
  std::string reference;
  std::string image_dir;
};

int cmd_device(const DeviceArgs& args, const Config& cfg) {
  std::vector<CaptureSet> sets;
  for (const auto& path : args.sets) sets.push_back(load_capture_set_file(path, args.image_dir));
  DeviceOffsetReport report;
  if (args.reference.empty()) {
    report = device_offsets(sets, load_database(cfg));
  } else {
    report = device_offsets(sets, load_capture_set_file(args.reference, args.image_dir));
  }
  const fs::path summary_path = output_path(cfg, "device_offsets.csv");
  const fs::path deltas_path = output_path(cfg, "device_deltas.csv");
  write_file(summary_path, [&](std::ostream& out) { write_device_offsets_csv(out, report); });
  write_file(deltas_path, [&](std::ostream& out) { write_device_deltas_csv(out, report); });
  write_device_offsets_csv(std::cout, report);
  std::cout << "wrote " << summary_path.string() << '\n' << "wrote " << deltas_path.string() << '\n';
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Estimate Munsell soil colors from device colors and analyse chart color differences"};
  app.set_config("--config", "", "Read options from an INI/TOML file ([subcommand] sections)");
  app.require_subcommand(1);

  Config cfg;

  ConvertArgs convert_args;
  auto* convert = app.add_subcommand("convert", "Convert one color between spaces");
  convert->add_option("--rgb", convert_args.rgb, "Input 8-bit sRGB as R,G,B");
  convert->add_option("--lab", convert_args.lab, "Input CIE L*a*b* as L,a,b");
  convert->add_option("--to", convert_args.to, "Target space")
      ->check(CLI::IsMember({"rgb", "linear", "xyz", "lab", "lch", "cmyk"}, CLI::ignore_case))
      ->capture_default_str();
  convert->add_option("--illuminant", convert_args.illuminant, "Reference white for XYZ/L*a*b*/LCh")
      ->check(CLI::IsMember({"D65", "C", "D50"}, CLI::ignore_case))
      ->capture_default_str();

  MatchArgs match_args;
  auto* match_cmd = app.add_subcommand("match", "Rank chart chips by color difference to one color");
  match_cmd->add_option("--image", match_args.image, "PNG/JPEG of a chip or soil sample");
  match_cmd->add_option("--region", match_args.region, "Sampled rectangle x,y,width,height (default: central 50%)");
  match_cmd->add_option("--statistic", match_args.statistic, "Patch statistic")
      ->check(CLI::IsMember({"mean", "median"}))
      ->capture_default_str();
  match_cmd->add_option("--rgb", match_args.rgb, "Query as 8-bit sRGB R,G,B");
  match_cmd->add_option("--lab", match_args.lab, "Query as L*a*b* L,a,b");
  match_cmd->add_option("--k", match_args.k, "Number of ranked chips to print")->capture_default_str();
  match_cmd->add_option("--pages", match_args.pages, "Restrict candidates to these hue pages, e.g. 5YR,7.5YR");
  match_cmd->add_option("--method", cfg.method, "de1976, de1994, de2000 or cmc")->capture_default_str();
  add_database_options(match_cmd, cfg);

  std::string heatmap_pages = "2.5YR,5YR";
  auto* heatmap_cmd = app.add_subcommand("heatmap", "Cross-page color difference matrix with centerline statistics");
  heatmap_cmd->add_option("--pages", heatmap_pages, "Two hue pages, rows then columns")->capture_default_str();
  heatmap_cmd->add_option("--method", cfg.method, "de1976, de1994, de2000 or cmc")->capture_default_str();
  add_database_options(heatmap_cmd, cfg);
  add_out_option(heatmap_cmd, cfg);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Hue and hue-value-chroma accuracy of capture sets");
  eval->add_option("--sets", eval_args.sets, "Capture set manifests (truth,image_path,R,G,B,L,a,b)")
      ->required()
      ->delimiter(',');
  eval->add_option("--methods", eval_args.methods, "Comma-separated methods")->capture_default_str();
  eval->add_option("--image-dir", eval_args.image_dir, "Base directory for image paths (default: manifest directory)");
  eval->add_option("--pages", eval_args.pages, "Candidate hue pages (default: 10R,2.5YR,5YR,7.5YR,10YR,2.5Y,5Y)");
  eval->add_option("--statistic", eval_args.statistic, "Patch statistic for image rows")
      ->check(CLI::IsMember({"mean", "median"}))
      ->capture_default_str();
  eval->add_option("--threads", eval_args.threads, "Worker threads (output does not depend on it)")
      ->capture_default_str();
  add_database_options(eval, cfg);
  add_out_option(eval, cfg);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Write a synthetic capture set (chip Lab + offset + Gaussian noise)");
  synth->add_option("--sigma", synth_args.sigma, "Noise standard deviation in L*a*b* units")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth->add_option("--offset", synth_args.offset, "Lab offset L,a,b")->capture_default_str();
  synth->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  synth->add_option("--label", synth_args.label, "Set label (also the file name)");
  synth->add_option("--device", synth_args.device, "Device name")->capture_default_str();
  add_database_options(synth, cfg);
  add_out_option(synth, cfg);

  std::string scatter_space = "lab";
  auto* scatter = app.add_subcommand("scatter", "Export chip coordinates in one color space with a clumping index");
  scatter->add_option("--space", scatter_space, "rgb, cmyk, xyz, lch or lab")
      ->check(CLI::IsMember({"rgb", "cmyk", "xyz", "lch", "lab"}, CLI::ignore_case))
      ->capture_default_str();
  add_database_options(scatter, cfg);
  add_out_option(scatter, cfg);

  DeviceArgs device_args;
  auto* device = app.add_subcommand("device-compare", "Per-device L*a*b* offsets against a reference");
  device->add_option("--sets", device_args.sets, "Capture set manifests, one per device")->required()->delimiter(',');
  device->add_option("--reference", device_args.reference, "Reference manifest (default: the chip database)");
  device->add_option("--image-dir", device_args.image_dir, "Base directory for image paths");
  add_database_options(device, cfg);
  add_out_option(device, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*convert) return cmd_convert(convert_args);
    if (*match_cmd) return cmd_match(match_args, cfg);
    if (*heatmap_cmd) return cmd_heatmap(heatmap_pages, cfg);
    if (*eval) return cmd_eval(eval_args, cfg);
    if (*synth) return cmd_synth(synth_args, cfg);
    if (*scatter) return cmd_scatter(scatter_space, cfg);
    if (*device) return cmd_device(device_args, cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace soilcolor::cli
