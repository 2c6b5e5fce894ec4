// SPDX-License-Identifier: Apache-2.0

#include "rulebench/metrics/detection.hpp"

#include <gtest/gtest.h>

namespace {

using namespace rulebench::metrics;

TEST(DetectionScore, MeanOfBothPrecisions)
{
    const auto s = detection_score(14, 2, 12);
    EXPECT_TRUE(s.defined);
    EXPECT_DOUBLE_EQ(s.precision, 14.0 / 16.0);
    EXPECT_DOUBLE_EQ(s.unique_precision, 12.0 / 16.0);
    EXPECT_DOUBLE_EQ(s.score, 0.8125);
}

TEST(DetectionScore, HalfUpRoundingOnExactValue)
{
    // 0.8125 is exact in binary; naive printf rounds it to even.
    EXPECT_EQ(format_score(14, 2, 12), "0.813");
    EXPECT_EQ(format_score(756, 9, 747), "0.982");
    EXPECT_EQ(format_score(35, 0, 4), "0.557");
    EXPECT_EQ(format_score(10, 0, 10), "1.000");
    EXPECT_EQ(format_score(1, 1, 0), "0.250");
}

TEST(DetectionScore, UndefinedWithoutHits)
{
    const auto s = detection_score(0, 0, 0);
    EXPECT_FALSE(s.defined);
    EXPECT_EQ(format_score(s), "n/a");
    EXPECT_EQ(format_score(0, 5, 0), "0.000");
}

TEST(DetectionScore, UniqueCannotExceedTp)
{
    EXPECT_THROW(detection_score(3, 0, 4), MetricsError);
}

TEST(FormatFixed, NoNegativeZero)
{
    EXPECT_EQ(format_fixed(-0.0001, 1), "0.0");
    EXPECT_EQ(format_fixed(59.84, 1), "59.8");
    EXPECT_EQ(format_fixed(1.505, 2).size(), 4U);
}

}  // namespace
