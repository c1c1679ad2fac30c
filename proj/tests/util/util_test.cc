#include <filesystem>
#include <vector>

#include <gtest/gtest.h>

#include "riskbench/util/error.h"
#include "riskbench/util/io.h"
#include "riskbench/util/stats.h"
#include "riskbench/util/time.h"

namespace riskbench {
namespace {

TEST(StatsTest, MedianOddAndEven) {
  const std::vector<double> odd = {3, 1, 2};
  const std::vector<double> even = {4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(Median(odd), 2.0);
  EXPECT_DOUBLE_EQ(Median(even), 2.5);
  EXPECT_DOUBLE_EQ(Median(std::vector<double>{}), 0.0);
}

TEST(StatsTest, QuantileInterpolatesBetweenOrderStatistics) {
  const std::vector<double> v = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(QuantileLinear(v, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(QuantileLinear(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(QuantileLinear(v, 0.75), 3.25);
  EXPECT_DOUBLE_EQ(QuantileLinear(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(QuantileLinear(v, 1.0), 4.0);
}

TEST(StatsTest, PopulationStdDividesByCount) {
  const std::vector<double> v = {1, 1, 1, 3};
  EXPECT_NEAR(PopulationStd(v), std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(Mean(v), 1.5);
}

TEST(TimeTest, ParsesCommonForms) {
  EXPECT_EQ(ParseIso8601("1970-01-01T00:00:00Z"), 0);
  EXPECT_EQ(ParseIso8601("1970-01-02"), 86400);
  EXPECT_EQ(ParseIso8601("2024-03-01 10:00"), ParseIso8601("2024-03-01T10:00:00Z"));
  EXPECT_EQ(ParseIso8601("2024-03-01T12:00:00+02:00"),
            ParseIso8601("2024-03-01T10:00:00Z"));
  EXPECT_EQ(ParseIso8601("2024-03-01T08:00:00-0200"),
            ParseIso8601("2024-03-01T10:00:00Z"));
  EXPECT_EQ(ParseIso8601("2024-03-01T10:00:00.987Z"),
            ParseIso8601("2024-03-01T10:00:00Z"));
}

TEST(TimeTest, RejectsInvalidDates) {
  EXPECT_FALSE(ParseIso8601("2023-02-29"));
  EXPECT_FALSE(ParseIso8601("2024-13-01"));
  EXPECT_FALSE(ParseIso8601("2024-01-01T24:00:00Z"));
  EXPECT_FALSE(ParseIso8601("yesterday"));
  EXPECT_FALSE(ParseIso8601(""));
  EXPECT_TRUE(ParseIso8601("2024-02-29"));
}

TEST(TimeTest, FormatRoundTrips) {
  for (UnixSeconds t : {0LL, 951782400LL, 1709287200LL, -86400LL}) {
    EXPECT_EQ(ParseIso8601(FormatIso8601(t)), t);
  }
  EXPECT_EQ(FormatIso8601(1709287200), "2024-03-01T10:00:00Z");
  EXPECT_EQ(HourOfDayUtc(1709287200), 10);
  EXPECT_EQ(HourOfDayUtc(-3600), 23);
}

TEST(ErrorTest, MessageCarriesCodeName) {
  try {
    Fail(ErrorCode::kBadLabel, "label 2");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadLabel);
    EXPECT_STREQ(e.what(), "BadLabel: label 2");
    EXPECT_EQ(e.message(), "label 2");
  }
  SchemaError s(ErrorCode::kSchemaViolation, "/turns/0", "expected object");
  EXPECT_EQ(s.path(), "/turns/0");
  EXPECT_EQ(s.reason(), "expected object");
  EXPECT_STREQ(s.what(), "SchemaViolation: /turns/0: expected object");
}

TEST(IoTest, AtomicWriteCreatesParentsAndLeavesNoTemp) {
  const auto dir = std::filesystem::temp_directory_path() / "riskbench_io_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "out.txt";
  WriteFileAtomic(path, "first");
  WriteFileAtomic(path, "second");
  EXPECT_EQ(ReadFile(path), "second");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST(IoTest, MissingFileIsIoError) {
  try {
    ReadFile("/nonexistent/riskbench/file");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(IoTest, JsonLinesSkipBlankLinesAndReportLineNumbers) {
  const auto rows = ParseJsonLines("{\"a\":1}\n\n{\"a\":2}\n", "t");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1]["a"], 2);
  try {
    ParseJsonLines("{\"a\":1}\n{oops\n", "t");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedInput);
    EXPECT_NE(std::string(e.what()).find("t:2"), std::string::npos);
  }
}

}  // namespace
}  // namespace riskbench
