#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "helpers.hpp"
#include "loadcast/data.hpp"
#include "loadcast/eval.hpp"
#include "loadcast/rng.hpp"

using namespace loadcast;

namespace {

// Fixed-output stand-ins for trained models.
class OracleModel final : public Forecaster {
 public:
  OracleModel(NormalizationSpec norm, std::string label = "oracle")
      : norm_(norm), label_(std::move(label)) {}
  std::string name() const override { return label_; }
  std::vector<std::vector<double>> forecast_mw(
      const LoadDataset&, const std::vector<Sample>& samples) const override {
    std::vector<std::vector<double>> out;
    for (const Sample& s : samples) {
      std::vector<double> y;
      for (double t : s.target) y.push_back(denormalize(norm_, t));
      out.push_back(std::move(y));
    }
    return out;
  }

 private:
  NormalizationSpec norm_;
  std::string label_;
};

class ConstantModel final : public Forecaster {
 public:
  ConstantModel(double mw, std::string label) : mw_(mw), label_(std::move(label)) {}
  std::string name() const override { return label_; }
  std::vector<std::vector<double>> forecast_mw(
      const LoadDataset&, const std::vector<Sample>& samples) const override {
    return std::vector<std::vector<double>>(samples.size(),
                                            std::vector<double>(target_width, mw_));
  }

 private:
  double mw_;
  std::string label_;
};

double oracle_mape(const std::vector<double>& a, const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - p[i]) / a[i];
  return s * 100.0 / static_cast<double>(a.size());
}

}  // namespace

TEST_CASE("mape hand cases and errors") {
  CHECK(mape({100.0, 200.0}, {90.0, 210.0}) == Catch::Approx(7.5));
  CHECK(mape({50.0, 75.0}, {50.0, 75.0}) == 0.0);
  CHECK_THROWS_MATCHES(mape({}, {}), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::empty_input;
                       }));
  CHECK_THROWS_MATCHES(mape({0.0}, {1.0}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::zero_actual; }));
  // scale invariance
  CHECK(mape({100.0, 200.0}, {90.0, 210.0}) ==
        Catch::Approx(mape({300.0, 600.0}, {270.0, 630.0})));
}

TEST_CASE("map hand cases honor the predicted denominator") {
  CHECK(map_err({110.0}, {100.0}) == Catch::Approx(10.0));
  CHECK(map_err({100.0, 300.0}, {100.0, 250.0}) == Catch::Approx(20.0));
  CHECK(map_err({42.0}, {42.0}) == 0.0);
  // conventional form divides by the actual instead
  CHECK(map_err({110.0}, {100.0}, MapDenominator::actual) ==
        Catch::Approx(10.0 / 110.0 * 100.0));
  CHECK_THROWS_MATCHES(map_err({1.0}, {0.0}), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::zero_predicted; }));
}

TEST_CASE("a perfect oracle scores zero everywhere") {
  const auto ds = testutil::make_dataset(8 * 24, [](std::size_t i) {
    return 500.0 + 100.0 * std::sin(i / 7.0);
  });
  const auto norm = fit_normalizer(ds);
  const auto samples = build_samples(ds, 2, norm, fit_weather_norms(ds));
  REQUIRE(!samples.empty());
  const ForecastReport report = evaluate_model(OracleModel(norm), ds, samples, norm);
  CHECK(report.overall_mape == Catch::Approx(0.0).margin(1e-9));
  CHECK(report.overall_map == Catch::Approx(0.0).margin(1e-9));
  CHECK(report.per_day.size() == samples.size() * 2);
}

TEST_CASE("per-day and overall metrics are recomputable from per-hour rows") {
  const auto ds = testutil::make_dataset(10 * 24, [](std::size_t i) {
    return 600.0 + 50.0 * std::cos(i / 5.0) + (i % 7);
  });
  const auto norm = fit_normalizer(ds);
  const auto samples = build_samples(ds, 2, norm, fit_weather_norms(ds));
  const ForecastReport report =
      evaluate_model(ConstantModel(norm.p_min, "floor"), ds, samples, norm);

  REQUIRE(report.per_hour.size() == samples.size() * target_width);
  std::vector<double> a, p;
  for (const HourRow& r : report.per_hour) {
    a.push_back(r.actual_mw);
    p.push_back(r.predicted_mw);
  }
  CHECK(report.overall_mape == Catch::Approx(oracle_mape(a, p)).margin(1e-9));

  for (std::size_t d = 0; d < report.per_day.size(); ++d) {
    std::vector<double> da, dp;
    for (std::size_t i = d * 24; i < d * 24 + 24; ++i) {
      da.push_back(report.per_hour[i].actual_mw);
      dp.push_back(report.per_hour[i].predicted_mw);
    }
    CHECK(report.per_day[d].mape_pct == Catch::Approx(oracle_mape(da, dp)).margin(1e-9));
    CHECK(report.per_day[d].map_pct == Catch::Approx(map_err(da, dp)).margin(1e-9));
  }
}

TEST_CASE("one sample yields exactly two day rows") {
  const auto ds = testutil::make_dataset(96, [](std::size_t i) { return 500.0 + (i % 24); });
  const auto norm = fit_normalizer(ds);
  const auto samples = build_samples(ds, 1, norm, fit_weather_norms(ds));
  REQUIRE(samples.size() == 1);
  const ForecastReport report = evaluate_model(ConstantModel(600.0, "c"), ds, samples, norm);
  CHECK(report.per_day.size() == 2);
}

TEST_CASE("comparison cells pool the hours of each weekday") {
  // 15 days starting Monday 1994-01-03 cover two Mondays as target days.
  const auto ds = testutil::make_dataset(15 * 24, [](std::size_t i) {
    return 700.0 + 30.0 * std::sin(i / 3.0) + (i % 5);
  });
  const auto norm = fit_normalizer(ds);
  const auto samples = build_samples(ds, 1, norm, fit_weather_norms(ds));
  const ForecastReport a = evaluate_model(ConstantModel(650.0, "m1"), ds, samples, norm);
  const ForecastReport b = evaluate_model(ConstantModel(720.0, "m2"), ds, samples, norm);
  const ComparisonTable table = compare_models({a, b});

  REQUIRE(table.model_names == std::vector<std::string>{"m1", "m2"});
  // cross-check the Monday cell of model m1 against a direct recomputation
  std::vector<double> ma, mp;
  for (std::size_t d = 0; d < a.per_day.size(); ++d) {
    if (a.per_day[d].daytype != DayType::weekday) continue;
    if (weekday_monday0(a.per_day[d].day) != 0) continue;
    for (std::size_t i = d * 24; i < d * 24 + 24; ++i) {
      ma.push_back(a.per_hour[i].actual_mw);
      mp.push_back(a.per_hour[i].predicted_mw);
    }
  }
  REQUIRE(!ma.empty());
  CHECK(table.weekday_cells[0][0] == Catch::Approx(oracle_mape(ma, mp)).margin(1e-9));

  // identical reports produce identical rows
  const ComparisonTable twice = compare_models({a, a});
  for (int c = 0; c < 6; ++c) {
    const double x = twice.weekday_cells[0][c];
    const double y = twice.weekday_cells[1][c];
    if (std::isnan(x))
      CHECK(std::isnan(y));
    else
      CHECK(x == y);
  }
}

TEST_CASE("days with no data are absent, not zero") {
  // Target days run Wednesday..Sunday, so Monday/Tuesday cells must be NaN.
  const auto ds = testutil::make_dataset(7 * 24, [](std::size_t i) { return 500.0 + (i % 9); });
  const auto norm = fit_normalizer(ds);
  const auto samples = build_samples(ds, 1, norm, fit_weather_norms(ds));
  // target days: Wed Jan 5 .. Sat Jan 8
  const ForecastReport a = evaluate_model(ConstantModel(510.0, "m1"), ds, samples, norm);
  const ForecastReport b = evaluate_model(ConstantModel(505.0, "m2"), ds, samples, norm);
  const ComparisonTable table = compare_models({a, b});
  CHECK(std::isnan(table.weekday_cells[0][0]));      // no Monday targets
  CHECK_FALSE(std::isnan(table.weekday_cells[0][2]));  // Wednesday present
  const std::string text = comparison_to_text(table);
  CHECK(text.find('-') != std::string::npos);
}

TEST_CASE("mismatched evaluation sets are rejected") {
  const auto ds = testutil::make_dataset(10 * 24, [](std::size_t i) { return 500.0 + (i % 9); });
  const auto norm = fit_normalizer(ds);
  const auto w = fit_weather_norms(ds);
  const auto all = build_samples(ds, 1, norm, w);
  const auto sparse = build_samples(ds, 3, norm, w);
  const ForecastReport a = evaluate_model(ConstantModel(510.0, "m1"), ds, all, norm);
  const ForecastReport b = evaluate_model(ConstantModel(505.0, "m2"), ds, sparse, norm);
  CHECK_THROWS_MATCHES(compare_models({a, b}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::mismatched_evaluation_sets;
                       }));
}

TEST_CASE("weekend and holiday days land in the weekend buckets") {
  // 9 days starting Monday: the only covered Friday (Jan 7) is a holiday.
  auto ds = testutil::make_dataset(9 * 24, [](std::size_t i) { return 640.0 + (i % 11); });
  ds.holidays.insert(make_day(1994, 1, 7));  // Friday holiday
  const auto norm = fit_normalizer(ds);
  const auto samples = build_samples(ds, 1, norm, fit_weather_norms(ds));
  const ForecastReport a = evaluate_model(ConstantModel(650.0, "m1"), ds, samples, norm);
  const ForecastReport b = evaluate_model(ConstantModel(660.0, "m2"), ds, samples, norm);
  const ComparisonTable table = compare_models({a, b});
  CHECK(std::isnan(table.weekday_cells[0][4]));       // the only Friday was a holiday
  CHECK_FALSE(std::isnan(table.weekend_cells[0][2])); // holiday bucket populated
}
