#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "bpsma/dfmea.hpp"

using namespace bpsma;

namespace {

const std::string kReferenceTable = std::string(BPSMA_DATA_DIR) + "/dfmea_reference.csv";

FailureMode fm(const std::string& item, int s, int o, int d) { return {item, "", "", "", "", s, o, d}; }

}  // namespace

TEST(Dfmea, RpnExamples) {
  EXPECT_EQ(rpn(fm("SMA wire", 7, 8, 9)), 504);
  EXPECT_EQ(rpn(fm("min", 1, 1, 1)), 1);
  EXPECT_EQ(rpn(fm("Hydraulic oil", 8, 4, 6)), 192);
  EXPECT_EQ(rpn(fm("max", 10, 10, 10)), 1000);
}

TEST(Dfmea, RpnIsSymmetric) {
  for (int s = 1; s <= 10; ++s)
    for (int o = 1; o <= 10; ++o)
      for (int d = 1; d <= 10; ++d) {
        const int r = rpn(fm("", s, o, d));
        EXPECT_EQ(r, s * o * d);
        EXPECT_EQ(r, rpn(fm("", d, s, o)));
        EXPECT_EQ(r, rpn(fm("", o, d, s)));
      }
}

TEST(Dfmea, ScoresOutOfRange) {
  EXPECT_THROW(rpn(fm("x", 0, 5, 5)), DomainError);
  EXPECT_THROW(rpn(fm("x", 5, 11, 5)), DomainError);
  EXPECT_THROW(rpn(fm("x", 5, 5, -1)), DomainError);
}

TEST(Dfmea, ReferenceTableRanksInPublishedOrder) {
  const auto ranked = rank(read_failure_modes_csv(kReferenceTable));
  ASSERT_EQ(ranked.size(), 6u);
  const std::vector<std::pair<std::string, int>> expected{{"SMA wire", 504},   {"3D printed parts", 210},
                                                          {"Hydraulic oil", 192}, {"Crimps", 168},
                                                          {"Electrical wires", 162}, {"Bias spring", 105}};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(ranked[i].mode.item, expected[i].first);
    EXPECT_EQ(ranked[i].rpn, expected[i].second);
  }
}

TEST(Dfmea, TieBreaks) {
  const auto single = rank({fm("only", 2, 3, 4)});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].mode.item, "only");

  // Equal RPN 200: higher severity first.
  const auto r = rank({fm("b", 5, 10, 4), fm("a", 10, 5, 4)});
  EXPECT_EQ(r[0].mode.item, "a");
  EXPECT_EQ(r[1].mode.item, "b");

  // Equal RPN and severity: input order.
  const auto s = rank({fm("first", 5, 4, 10), fm("second", 5, 10, 4)});
  EXPECT_EQ(s[0].mode.item, "first");
  EXPECT_EQ(s[1].mode.item, "second");

  EXPECT_THROW(rank({}), DomainError);
}

TEST(Dfmea, RankIsPermutation) {
  std::vector<FailureMode> modes;
  for (int i = 0; i < 40; ++i) modes.push_back(fm("m" + std::to_string(i), 1 + i % 10, 1 + (i * 7) % 10, 1 + (i * 3) % 10));
  const auto ranked = rank(modes);
  ASSERT_EQ(ranked.size(), modes.size());
  std::vector<std::size_t> idx;
  for (const auto& r : ranked) {
    EXPECT_EQ(r.mode, modes[r.input_index]);
    idx.push_back(r.input_index);
  }
  std::sort(idx.begin(), idx.end());
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(idx[i], i);
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    const auto& a = ranked[i - 1];
    const auto& b = ranked[i];
    const bool ordered = a.rpn > b.rpn || (a.rpn == b.rpn && a.mode.severity > b.mode.severity) ||
                         (a.rpn == b.rpn && a.mode.severity == b.mode.severity && a.input_index < b.input_index);
    EXPECT_TRUE(ordered);
  }
}

TEST(Dfmea, CsvParsingErrors) {
  std::istringstream bad_header("a,b\n");
  EXPECT_THROW(read_failure_modes_csv(bad_header), ParseError);
  std::istringstream bad_score("item,function,cause,mode,effect,severity,occurrence,detection\nx,f,c,m,e,7,8,nine\n");
  EXPECT_THROW(read_failure_modes_csv(bad_score), ParseError);
  std::istringstream out_of_range("item,function,cause,mode,effect,severity,occurrence,detection\nx,f,c,m,e,7,8,11\n");
  EXPECT_THROW(read_failure_modes_csv(out_of_range), DomainError);
  EXPECT_THROW(read_failure_modes_csv("/nonexistent.csv"), IoError);
}

TEST(Dfmea, Reports) {
  const auto ranked = rank(read_failure_modes_csv(kReferenceTable));
  std::ostringstream csv, text;
  write_rank_csv(csv, ranked);
  write_rank_table(text, ranked);
  EXPECT_EQ(csv.str().rfind("rank,item,function,cause,mode,effect,severity,occurrence,detection,rpn\n1,SMA wire,", 0), 0u);
  // Fields with commas or quotes survive a CSV round trip.
  std::istringstream in("item,function,cause,mode,effect,severity,occurrence,detection\n"
                        "\"Oil, hydraulic\",f,\"said \"\"leak\"\"\",m,e,8,4,6\n");
  const auto modes = read_failure_modes_csv(in);
  EXPECT_EQ(modes[0].item, "Oil, hydraulic");
  EXPECT_EQ(modes[0].cause, "said \"leak\"");
  const auto t = text.str();
  EXPECT_NE(t.find("SMA wire"), std::string::npos);
  EXPECT_LT(t.find("SMA wire"), t.find("Bias spring"));
  EXPECT_NE(t.find(" 504"), std::string::npos);
}
