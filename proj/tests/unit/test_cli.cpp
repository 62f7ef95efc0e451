#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
CliRun run_cli(const std::string& args) {
  const std::string command = std::string("\"") + SOILCOLOR_CLI + "\" " + args + " 2>&1";
  CliRun result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("soilcolor_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, ConvertWhiteToLab) {
  const CliRun r = run_cli("convert --rgb 255,255,255 --to lab");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "100.0000 0.0000 0.0000\n");
}

TEST(Cli, ConvertBlackToCmyk) {
  const CliRun r = run_cli("convert --rgb 0,0,0 --to cmyk");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0 0 0 1\n");
}

TEST(Cli, ConvertOutOfGamutWarns) {
  const CliRun r = run_cli("convert --lab 50,80,-80 --to rgb");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("warning"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli("convert --rgb 1,2 --to lab").code, 2);
  EXPECT_EQ(run_cli("convert --rgb 1,2,300 --to lab").code, 2);
  EXPECT_EQ(run_cli("convert --rgb 1,2,3 --to hsv").code, 2);
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("match --lab 50,10,20 --method de1999").code, 2);
  EXPECT_EQ(run_cli("").code, 2);
}

TEST(Cli, HelpListsFlags) {
  const CliRun r = run_cli("match --help");
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--image", "--region", "--rgb", "--lab", "--k", "--pages", "--method", "--db"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
}

TEST(Cli, MatchPrintsRankedChips) {
  const CliRun r = run_cli("match --lab 51.0006,17.7944,30.7677 --k 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("   1  5YR 5/6       0.0000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("   3  "), std::string::npos);
  EXPECT_EQ(r.out.find("   4  "), std::string::npos);
}

TEST(Cli, MatchUnreadableImageExitsOne) {
  const fs::path dir = scratch("badimage");
  std::ofstream(dir / "x.png") << "garbage";
  EXPECT_EQ(run_cli("match --image " + (dir / "x.png").string()).code, 1);
  EXPECT_EQ(run_cli("match --image " + (dir / "none.png").string()).code, 1);
}

TEST(Cli, HeatmapWritesNamedFiles) {
  const fs::path dir = scratch("heatmap");
  const CliRun r = run_cli("heatmap --pages 2.5YR,5YR --method cmc --out " + dir.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir / "heatmap_2.5YR_5YR_cmc.csv"));
  EXPECT_TRUE(fs::exists(dir / "heatmap_2.5YR_5YR_cmc.json"));
  EXPECT_EQ(run_cli("heatmap --pages 2.5YR,5PB --out " + dir.string()).code, 1);
}

TEST(Cli, SynthThenEvalMatchesFrozenReport) {
  const fs::path dir = scratch("eval");
  ASSERT_EQ(run_cli("synth --sigma 2 --seed 42 --out " + dir.string()).code, 0);
  const CliRun r = run_cli("eval --sets " + (dir / "synthetic-s2-seed42.csv").string() + " --out " + dir.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(dir / "accuracy.csv"), slurp(SOILCOLOR_FIXTURES "/accuracy_sigma2_seed42.csv"));
}

TEST(Cli, EvalMissingManifestExitsOne) {
  EXPECT_EQ(run_cli("eval --sets /nonexistent/set.csv --out " + scratch("missing").string()).code, 1);
}

TEST(Cli, ScatterAndDeviceCompare) {
  const fs::path dir = scratch("scatter");
  EXPECT_EQ(run_cli("scatter --space cmyk --out " + dir.string()).code, 0);
  EXPECT_TRUE(fs::exists(dir / "scatter_cmyk.csv"));
  EXPECT_TRUE(fs::exists(dir / "clumping_cmyk.json"));
  ASSERT_EQ(run_cli("synth --sigma 0 --offset 7.4,0,0 --label cam --device cam --out " + dir.string()).code, 0);
  const CliRun r = run_cli("device-compare --sets " + (dir / "cam.csv").string() + " --out " + dir.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(slurp(dir / "device_offsets.csv").find("cam,cam,L,7.400000"), std::string::npos);
}

TEST(Cli, ConfigFileSuppliesOptions) {
  const fs::path dir = scratch("config");
  std::ofstream(dir / "run.toml") << "[heatmap]\nmethod = \"de1976\"\nout = \"" << dir.string() << "\"\n";
  const CliRun r = run_cli("--config " + (dir / "run.toml").string() + " heatmap");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir / "heatmap_2.5YR_5YR_de1976.csv"));
}
