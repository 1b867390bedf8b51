#include <gtest/gtest.h>

#include "ghm/error.hpp"
#include "ghm/time.hpp"

namespace ghm {
namespace {

using namespace std::chrono;

Timestamp utc(int y, unsigned mo, unsigned d, int h, int mi, int s) {
  return sys_days{year{y} / month{mo} / day{d}} + hours{h} + minutes{mi} + seconds{s};
}

TEST(Iso8601, ParsesZuluAndOffsets) {
  EXPECT_EQ(parse_iso8601("2007-11-11T15:00:00Z"), utc(2007, 11, 11, 15, 0, 0));
  EXPECT_EQ(parse_iso8601("2007-11-11T17:30:00+02:30"), utc(2007, 11, 11, 15, 0, 0));
  EXPECT_EQ(parse_iso8601("2007-11-11T10:00:00-05:00"), utc(2007, 11, 11, 15, 0, 0));
  EXPECT_EQ(parse_iso8601("2007-11-11T15:00:00.750Z"), utc(2007, 11, 11, 15, 0, 0));
}

TEST(Iso8601, RejectsMalformed) {
  EXPECT_FALSE(parse_iso8601(""));
  EXPECT_FALSE(parse_iso8601("2007-13-01T00:00:00Z"));
  EXPECT_FALSE(parse_iso8601("2007-02-30T00:00:00Z"));
  EXPECT_FALSE(parse_iso8601("yesterday"));
  EXPECT_FALSE(parse_iso8601("2007-11-11T25:00:00Z"));
}

TEST(Rfc822, ParsesCommonForms) {
  EXPECT_EQ(parse_rfc822("Sun, 11 Nov 2007 15:00:00 GMT"), utc(2007, 11, 11, 15, 0, 0));
  EXPECT_EQ(parse_rfc822("11 Nov 2007 16:00:00 +0100"), utc(2007, 11, 11, 15, 0, 0));
  EXPECT_EQ(parse_rfc822("Sun, 11 Nov 2007 10:00:00 EST"), utc(2007, 11, 11, 15, 0, 0));
}

TEST(Rfc822, RejectsMalformed) {
  EXPECT_FALSE(parse_rfc822("Sun, 32 Nov 2007 15:00:00 GMT"));
  EXPECT_FALSE(parse_rfc822("not a date"));
}

TEST(FeedDate, AcceptsEitherFormat) {
  EXPECT_EQ(parse_feed_date("2007-11-11T15:00:00Z"), parse_feed_date("Sun, 11 Nov 2007 15:00:00 GMT"));
}

TEST(FormatTimestamp, RoundTrips) {
  auto t = utc(2008, 2, 29, 23, 59, 59);
  EXPECT_EQ(format_timestamp(t), "2008-02-29T23:59:59Z");
  EXPECT_EQ(parse_iso8601(format_timestamp(t)), t);
}

TEST(RequireTimestamp, ThrowsWithFieldName) {
  try {
    require_timestamp("bogus", "from");
    FAIL();
  } catch (const ArgumentError& e) {
    EXPECT_NE(std::string(e.what()).find("from"), std::string::npos);
  }
}

}  // namespace
}  // namespace ghm
