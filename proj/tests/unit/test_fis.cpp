#include <catch2/catch_amalgamated.hpp>

#include "loadcast/fis.hpp"
#include "loadcast/data.hpp"
#include "loadcast/features.hpp"

using namespace loadcast;

namespace {

struct Fixture {
  LoadDataset ds;
  NormalizationSpec norm;
  WeatherNorms weather;
  std::vector<Sample> samples;

  explicit Fixture(int days = 30, double noise = 0.0) {
    SyntheticConfig cfg;
    cfg.num_days = days;
    cfg.noise_std = noise;
    cfg.seed = 3;
    ds = generate_synthetic(cfg);
    norm = fit_normalizer(ds);
    weather = fit_weather_norms(ds);
    samples = build_samples(ds, 1, norm, weather);
  }
};

}  // namespace

TEST_CASE("fis trains a nonempty rule base over the five inputs") {
  const Fixture fx;
  const FisModel model = fis_train(fx.ds, fx.samples, FisConfig{});
  CHECK(model.rules.size() > 10);
  REQUIRE(model.input_vars.size() == 5);
  CHECK(model.input_vars[0].name == "lag_load");
  CHECK(model.input_vars[0].terms.size() == 7);
  CHECK(model.input_vars[1].terms.size() == 8);  // temperature
  CHECK(model.output_load.terms.size() == 7);
  for (const MamdaniRule& r : model.rules) CHECK(r.antecedent.size() == 5);
}

TEST_CASE("fis forecast emits 48 in-universe values") {
  const Fixture fx;
  const FisModel model = fis_train(fx.ds, fx.samples, FisConfig{});
  const Sample& last = fx.samples.back();
  int fallbacks = -1;
  const auto out = fis_forecast_mw(model, fx.ds, last.target_start, &fallbacks);
  REQUIRE(out.size() == target_width);
  for (double v : out) {
    CHECK(v >= model.output_load.lo);
    CHECK(v <= model.output_load.hi);
  }
  CHECK(fallbacks >= 0);
}

TEST_CASE("fis forecast is reasonably accurate on clean synthetic data") {
  const Fixture fx(40);
  const FisModel model = fis_train(fx.ds, fx.samples, FisConfig{});
  const Sample& s = fx.samples.back();
  const auto out = fis_forecast_mw(model, fx.ds, s.target_start);
  const std::int64_t t = fx.ds.index_of(s.target_start);
  double err = 0.0;
  for (std::size_t k = 0; k < target_width; ++k)
    err += std::fabs(out[k] - fx.ds.records[t + k].load_mw) / fx.ds.records[t + k].load_mw;
  err /= target_width;
  CHECK(err < 0.15);  // coarse 7-term resolution, in-sample day
}

TEST_CASE("fis respects the configured membership shape") {
  const Fixture fx;
  FisConfig cfg;
  cfg.shape = MfShape::trapezoidal;
  const FisModel model = fis_train(fx.ds, fx.samples, cfg);
  CHECK(model.shape == MfShape::trapezoidal);
  CHECK(std::holds_alternative<Trapezoidal>(model.input_vars[0].terms[1].second));
}

TEST_CASE("fis needs history for the forecast date") {
  const Fixture fx;
  const FisModel model = fis_train(fx.ds, fx.samples, FisConfig{});
  CHECK_THROWS_MATCHES(fis_forecast_mw(model, fx.ds, fx.ds.start() + 24), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::insufficient_history;
                       }));
}
