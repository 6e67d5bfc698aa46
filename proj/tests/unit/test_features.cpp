#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "loadcast/features.hpp"

using namespace loadcast;

namespace {

const NormalizationSpec g_norm{400.0, 1000.0};

WeatherNorms norms_for(const LoadDataset& ds) { return fit_weather_norms(ds); }

}  // namespace

TEST_CASE("constant history encodes to 0.5 load lags") {
  const auto ds = testutil::constant_dataset(96, 700.0);
  const HourStamp t0{(ds.start().day() + 2) * 24};
  const auto x = encode_input(ds, t0, g_norm, norms_for(ds));
  REQUIRE(x.size() == input_width);
  for (std::size_t k = 0; k < 48; ++k) CHECK(x[k] == 0.5);
  for (double v : x) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("load lags are chronological") {
  const auto ds = testutil::make_dataset(96, [](std::size_t i) { return 400.0 + i; });
  const HourStamp t0{(ds.start().day() + 2) * 24};
  const auto x = encode_input(ds, t0, g_norm, norms_for(ds));
  // hour t-48 is record 0, hour t-1 is record 47
  CHECK(x[0] == Catch::Approx(normalize(g_norm, 400.0)));
  CHECK(x[47] == Catch::Approx(normalize(g_norm, 447.0)));
  for (std::size_t k = 1; k < 48; ++k) CHECK(x[k] > x[k - 1]);
}

TEST_CASE("monday target day encodes as (0.5, 1.0)") {
  // start Saturday 1994-01-01 so day 2 of history ends before Monday 01-03
  const auto ds = testutil::constant_dataset(96, 700.0, make_day(1994, 1, 1));
  const HourStamp monday{make_day(1994, 1, 3) * 24};
  const auto x = encode_input(ds, monday, g_norm, norms_for(ds));
  CHECK(x[60] == Catch::Approx(0.5));
  CHECK(x[61] == Catch::Approx(1.0));
}

TEST_CASE("temperature block carries d-1 then d-2 max/min/avg") {
  auto ds = testutil::constant_dataset(96, 700.0);
  // day d-2 occupies records 0..23, day d-1 records 24..47
  for (int i = 0; i < 24; ++i) ds.records[i].temp_c = -5.0 + i * 0.5;        // d-2
  for (int i = 24; i < 48; ++i) ds.records[i].temp_c = 10.0 + (i - 24) * 1.0;  // d-1
  const WeatherNorms w = norms_for(ds);
  const HourStamp t0{(ds.start().day() + 2) * 24};
  const auto x = encode_input(ds, t0, g_norm, w);
  CHECK(x[48] == Catch::Approx(normalize(w.temperature, 33.0)));   // d-1 max
  CHECK(x[49] == Catch::Approx(normalize(w.temperature, 10.0)));   // d-1 min
  CHECK(x[50] == Catch::Approx(normalize(w.temperature, 21.5)));   // d-1 avg
  CHECK(x[51] == Catch::Approx(normalize(w.temperature, 6.5)));    // d-2 max
  CHECK(x[52] == Catch::Approx(normalize(w.temperature, -5.0)));   // d-2 min
  CHECK(x[53] == Catch::Approx(normalize(w.temperature, 0.75)));   // d-2 avg
}

TEST_CASE("insufficient history and future raise") {
  const auto ds = testutil::constant_dataset(96, 700.0);
  const HourStamp late{ds.start().hours + 36};
  CHECK_THROWS_MATCHES(encode_input(ds, late, g_norm, norms_for(ds)), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::insufficient_history; }));

  const HourStamp t0{(ds.start().day() + 3) * 24};  // only 24 hours remain
  CHECK_THROWS_MATCHES(encode_target(ds, t0, g_norm), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::insufficient_future; }));
}

TEST_CASE("target encoding covers 48 chronological hours") {
  const auto ds = testutil::make_dataset(96, [](std::size_t i) { return 400.0 + i; });
  const HourStamp t0{(ds.start().day() + 2) * 24};
  const auto y = encode_target(ds, t0, g_norm);
  REQUIRE(y.size() == target_width);
  CHECK(y[0] == Catch::Approx(normalize(g_norm, 448.0)));
  CHECK(y[47] == Catch::Approx(normalize(g_norm, 495.0)));

  const auto maxed = testutil::constant_dataset(96, 1000.0);
  const auto ones = encode_target(maxed, t0, g_norm);
  for (double v : ones) CHECK(v == 1.0);
}

TEST_CASE("build_samples window arithmetic") {
  const auto w = norms_for(testutil::constant_dataset(96));
  // 2 history + 2 target days: a 10-day series admits day offsets 2..8.
  const auto ten = testutil::make_dataset(240, [](std::size_t i) { return 500.0 + (i % 24); });
  CHECK(build_samples(ten, 1, g_norm, w).size() == 7);
  const auto four = testutil::make_dataset(96, [](std::size_t i) { return 500.0 + (i % 24); });
  CHECK(build_samples(four, 1, g_norm, w).size() == 1);
  const auto three = testutil::make_dataset(72, [](std::size_t i) { return 500.0 + (i % 24); });
  CHECK(build_samples(three, 1, g_norm, w).empty());
}

TEST_CASE("stride produces a subsequence of stride one") {
  const auto ds = testutil::make_dataset(12 * 24, [](std::size_t i) { return 500.0 + (i % 24); });
  const auto w = norms_for(ds);
  const auto all = build_samples(ds, 1, g_norm, w);
  const auto sparse = build_samples(ds, 3, g_norm, w);
  REQUIRE(!sparse.empty());
  for (const Sample& s : sparse) {
    const auto match = std::find_if(all.begin(), all.end(), [&](const Sample& a) {
      return a.target_start == s.target_start;
    });
    REQUIRE(match != all.end());
    CHECK(match->input == s.input);
    CHECK(match->target == s.target);
  }
}

TEST_CASE("samples carry the first target day's daytype") {
  auto ds = testutil::constant_dataset(14 * 24);  // starts Monday 1994-01-03
  ds.holidays.insert(make_day(1994, 1, 7));       // Friday holiday
  const auto w = norms_for(ds);
  const auto samples = build_samples(ds, 1, g_norm, w);
  for (const Sample& s : samples) {
    const std::int64_t day = s.target_start.day();
    CHECK(s.daytype == day_type(day, ds.holidays));
    CHECK(s.target_start.hour_of_day() == 0);
  }
  // the Friday holiday sample is weekend-typed
  const auto fri = std::find_if(samples.begin(), samples.end(), [&](const Sample& s) {
    return s.target_start.day() == make_day(1994, 1, 7);
  });
  REQUIRE(fri != samples.end());
  CHECK(fri->daytype == DayType::weekend);
}

TEST_CASE("clamping keeps entries inside the unit interval") {
  // Raw values far outside the fitted ranges still encode into [0,1].
  auto ds = testutil::constant_dataset(96, 700.0);
  const WeatherNorms w = norms_for(ds);
  for (int i = 0; i < 24; ++i) ds.records[i].load_mw = 5000.0;
  for (int i = 24; i < 48; ++i) ds.records[i].temp_c = 99.0;
  const HourStamp t0{(ds.start().day() + 2) * 24};
  const auto x = encode_input(ds, t0, g_norm, w);
  for (double v : x) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}
