#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "soilcolor/chip_database.hpp"
#include "soilcolor/diagnostics.hpp"
#include "soilcolor/error.hpp"

using namespace soilcolor;

namespace {

class CapturedWarnings {
 public:
  CapturedWarnings() {
    previous_ = set_warning_handler([this](std::string_view m) { messages.emplace_back(m); });
  }
  ~CapturedWarnings() { set_warning_handler(previous_); }
  std::vector<std::string> messages;

 private:
  WarningHandler previous_;
};

const std::string kScanHeader = "hue,value,chroma,L,a,b,replicate\n";

}  // namespace

TEST(BundledDatabase, LayoutAndOrder) {
  const ChipDatabase& db = bundled_chip_database();
  EXPECT_EQ(db.size(), 7 * standard_page_layout().size());
  EXPECT_EQ(db.pages().size(), 7u);
  EXPECT_TRUE(std::is_sorted(db.chips().begin(), db.chips().end(),
                             [](const Chip& a, const Chip& b) { return CanonicalLess{}(a.code, b.code); }));
  const Chip* chip = db.find(parse_munsell("5YR 5/6"));
  ASSERT_NE(chip, nullptr);
  EXPECT_EQ(chip->source, ChipSource::RenotationDerived);
  EXPECT_NEAR(chip->lab.l, 51.00061243830035, 1e-9);
  EXPECT_NEAR(chip->lab.a, 17.794397886695844, 1e-9);
  EXPECT_NEAR(chip->lab.b, 30.76770732340739, 1e-9);
  EXPECT_FALSE(db.contains(parse_munsell("5YR 8.5/2")));
  EXPECT_EQ(db.page(parse_munsell_hue("2.5Y")).size(), standard_page_layout().size());
}

TEST(BundledDatabase, LightnessIncreasesWithValue) {
  const ChipDatabase& db = bundled_chip_database();
  std::map<std::pair<double, double>, std::vector<const Chip*>> columns;
  for (const Chip& c : db.chips()) columns[{c.code.hue.circle_position(), c.code.chroma}].push_back(&c);
  for (const auto& [key, chips] : columns) {
    for (std::size_t i = 1; i < chips.size(); ++i) {
      ASSERT_LT(chips[i - 1]->code.value, chips[i]->code.value);
      EXPECT_LT(chips[i - 1]->lab.l, chips[i]->lab.l) << format(chips[i]->code);
    }
  }
}

TEST(Build, MissingChipsAreReported) {
  std::istringstream in("hue,value,chroma,x,y,Y\n5YR,5,6,0.442,0.3808,19.27\n");
  try {
    build_chip_database(in);
    FAIL() << "expected BuildError";
  } catch (const BuildError& e) {
    EXPECT_NE(std::string(e.what()).find("lacks"), std::string::npos);
  }
}

TEST(Build, SinglePageAndIlluminantC) {
  BuildOptions options;
  options.pages = {parse_munsell_hue("5YR")};
  options.layout = {{5.0, 6.0}};
  options.target = IlluminantName::C;
  std::istringstream in("hue,value,chroma,x,y,Y\nN,5,0,0.31006,0.31616,19.27\n5YR,5,6,0.442,0.3808,19.27184375\n");
  const ChipDatabase db = build_chip_database(in, options);
  ASSERT_EQ(db.size(), 1u);
  EXPECT_EQ(db.chips()[0].lab.illuminant, IlluminantName::C);
}

TEST(Build, DuplicateRowsRejected) {
  BuildOptions options;
  options.pages = {parse_munsell_hue("5YR")};
  options.layout = {{5.0, 6.0}};
  std::istringstream in("hue,value,chroma,x,y,Y\n5YR,5,6,0.442,0.3808,19.27\n5YR,5,6,0.442,0.3808,19.27\n");
  try {
    build_chip_database(in, options);
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.row(), 3u);
  }
}

TEST(ScanLoader, AggregatesReplicates) {
  std::istringstream in(kScanHeader +
                        "5YR,5,6,50,10,20,1\n"
                        "5YR,5,6,52,12,26,2\n"
                        "5YR,5,6,60,11,21,3\n"
                        "10YR,6,4,60,5,20,1\n");
  const ChipDatabase mean = load_chip_database(in);
  ASSERT_EQ(mean.size(), 2u);
  const Chip* chip = mean.find(parse_munsell("5YR 5/6"));
  ASSERT_NE(chip, nullptr);
  EXPECT_EQ(chip->source, ChipSource::SensorScan);
  EXPECT_EQ(chip->replicates.size(), 3u);
  EXPECT_DOUBLE_EQ(chip->lab.l, 54.0);
  EXPECT_DOUBLE_EQ(chip->lab.b, 67.0 / 3.0);

  in.clear();
  in.seekg(0);
  const ChipDatabase median = load_chip_database(in, ReplicateAggregate::Median);
  EXPECT_DOUBLE_EQ(median.find(parse_munsell("5YR 5/6"))->lab.l, 52.0);
  EXPECT_DOUBLE_EQ(median.find(parse_munsell("5YR 5/6"))->lab.a, 11.0);
}

TEST(ScanLoader, RowErrors) {
  struct Case {
    std::string body;
    std::size_t row;
  };
  const std::vector<Case> cases = {
      {"5YR,5,6,50,10,20,1\n5YR,5,6,101,10,20,2\n", 3},
      {"5YR,5,6,50,10,20,0\n", 2},
      {"5YR,5,6,50,10,20,1\n5YR,5,6,51,10,20,1\n", 3},
      {"5YR,5,6,abc,10,20,1\n", 2},
      {"5QQ,5,6,50,10,20,1\n", 2},
  };
  for (const Case& c : cases) {
    std::istringstream in(kScanHeader + c.body);
    try {
      load_chip_database(in);
      ADD_FAILURE() << "expected LoadError for " << c.body;
    } catch (const LoadError& e) {
      EXPECT_EQ(e.row(), c.row) << e.what();
    }
  }
  std::istringstream missing("hue,value,L,a,b,replicate\n");
  EXPECT_THROW(load_chip_database(missing), LoadError);
}

TEST(ScanLoader, EmptyFileWarns) {
  CapturedWarnings warnings;
  std::istringstream in(kScanHeader);
  EXPECT_TRUE(load_chip_database(in).empty());
  EXPECT_EQ(warnings.messages.size(), 1u);
}

TEST(ScanLoader, RoundTripsBundledChips) {
  std::ostringstream out;
  out.precision(17);
  out << kScanHeader;
  for (const Chip& c : bundled_chip_database().chips()) {
    out << format(c.code.hue) << ',' << c.code.value << ',' << c.code.chroma << ',' << c.lab.l << ',' << c.lab.a
        << ',' << c.lab.b << ",1\n";
  }
  std::istringstream in(out.str());
  const ChipDatabase loaded = load_chip_database(in);
  ASSERT_EQ(loaded.size(), bundled_chip_database().size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_EQ(loaded.chips()[i].code, bundled_chip_database().chips()[i].code);
    EXPECT_EQ(loaded.chips()[i].lab.l, bundled_chip_database().chips()[i].lab.l);
    EXPECT_EQ(loaded.chips()[i].lab.b, bundled_chip_database().chips()[i].lab.b);
  }
}

TEST(Database, RejectsDuplicatesAndNonFinite) {
  const Chip chip{parse_munsell("5YR 5/6"), {50, 10, 20}};
  EXPECT_THROW(ChipDatabase({chip, chip}), DomainError);
  Chip bad = chip;
  bad.lab.a = std::nan("");
  EXPECT_THROW(ChipDatabase({bad}), DomainError);
}

TEST(Match, SelfMatchRanksFirst) {
  const ChipDatabase& db = bundled_chip_database();
  for (const DeltaEMethod& m :
       {DeltaEMethod::cie1976(), DeltaEMethod::cie1994(), DeltaEMethod::ciede2000(), DeltaEMethod::cmc()}) {
    for (const Chip& chip : db.chips()) {
      const MatchResult r = match(chip.lab, db, m);
      ASSERT_EQ(r.ranked.size(), db.size());
      EXPECT_EQ(r.best().code, chip.code);
      EXPECT_EQ(r.best().delta_e, 0.0);
      EXPECT_TRUE(score_match(r, chip.code).hvc_correct);
    }
  }
}

TEST(Match, RankingIsSortedAndInvariantToInsertionOrder) {
  std::vector<Chip> chips = bundled_chip_database().chips();
  std::mt19937_64 rng(17);
  std::shuffle(chips.begin(), chips.end(), rng);
  const ChipDatabase shuffled(chips);
  std::uniform_real_distribution<double> l(20, 80), ab(-10, 40);
  for (int i = 0; i < 50; ++i) {
    const LabColor q{l(rng), ab(rng), ab(rng)};
    const MatchResult a = match(q, bundled_chip_database());
    const MatchResult b = match(q, shuffled);
    ASSERT_EQ(a.ranked.size(), b.ranked.size());
    for (std::size_t k = 0; k < a.ranked.size(); ++k) {
      EXPECT_EQ(a.ranked[k].code, b.ranked[k].code);
      if (k > 0) EXPECT_LE(a.ranked[k - 1].delta_e, a.ranked[k].delta_e);
    }
  }
}

TEST(Match, TiesKeepCanonicalOrder) {
  const ChipDatabase db({{parse_munsell("5YR 5/6"), {50, 10, 0}}, {parse_munsell("2.5YR 5/6"), {50, -10, 0}}});
  const MatchResult r = match({50, 0, 0}, db, DeltaEMethod::cie1976());
  EXPECT_EQ(r.ranked[0].delta_e, r.ranked[1].delta_e);
  EXPECT_EQ(format(r.best().code), "2.5YR 5/6");
}

TEST(Match, PageFilter) {
  const std::vector<MunsellHue> pages = {parse_munsell_hue("7.5YR"), parse_munsell_hue("10YR")};
  const MatchResult r = match({50, 15, 30}, bundled_chip_database(), {}, pages);
  EXPECT_EQ(r.ranked.size(), 2 * standard_page_layout().size());
  for (const RankedChip& c : r.ranked) {
    EXPECT_TRUE(c.code.hue == pages[0] || c.code.hue == pages[1]);
  }
  const std::vector<MunsellHue> absent = {parse_munsell_hue("5PB")};
  EXPECT_THROW(match({50, 0, 0}, bundled_chip_database(), {}, absent), DomainError);
  EXPECT_THROW(match({50, 0, 0}, ChipDatabase{}), DomainError);
}

TEST(Match, ScoreSeparatesHueFromHvc) {
  const ChipDatabase& db = bundled_chip_database();
  const MatchResult r = match(db.find(parse_munsell("5YR 5/6"))->lab, db);
  const MatchScore same_page = score_match(r, parse_munsell("5YR 4/4"));
  EXPECT_TRUE(same_page.hue_correct);
  EXPECT_FALSE(same_page.hvc_correct);
  EXPECT_FALSE(score_match(r, parse_munsell("7.5YR 5/6")).hue_correct);
}
