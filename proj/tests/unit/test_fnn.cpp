#include <catch2/catch_amalgamated.hpp>

#include "loadcast/data.hpp"
#include "loadcast/fnn.hpp"

using namespace loadcast;

namespace {

struct Fixture {
  LoadDataset ds;
  NormalizationSpec norm;
  WeatherNorms weather;
  std::vector<Sample> samples;

  explicit Fixture(int days = 20) {
    SyntheticConfig cfg;
    cfg.num_days = days;
    cfg.noise_std = 0.0;
    cfg.seed = 13;
    ds = generate_synthetic(cfg);
    norm = fit_normalizer(ds);
    weather = fit_weather_norms(ds);
    samples = build_samples(ds, 1, norm, weather);
  }
};

FnnConfig quick_config() {
  FnnConfig cfg;
  cfg.hidden = 8;
  cfg.train.max_epochs = 400;
  cfg.train.learning_rate = 0.5;
  cfg.train.error_target = 1e-5;
  return cfg;
}

}  // namespace

TEST_CASE("encoded width follows the partition sizes") {
  const Fixture fx;
  auto [model, trace] = fnn_train(fx.samples, quick_config(), fx.norm);
  REQUIRE(model.feature_vars.size() == fnn_raw_feature_count);
  // 8 load features x 7 terms + 6 temperature x 8 + 6 weather x 7 + 2 crisp
  CHECK(model.encoded_width() == 8 * 7 + 6 * 8 + 6 * 7 + 2);
  CHECK(model.core.in == static_cast<int>(model.encoded_width()));
  CHECK(model.core.out == static_cast<int>(target_width));
  CHECK(model.core.out_act == OutputActivation::logistic);

  const auto encoded = fnn_encode(model, fx.samples.front());
  CHECK(encoded.size() == model.encoded_width());
  for (double v : encoded) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("encoding is pure and peaks where a feature sits on a term center") {
  const Fixture fx;
  auto [model, trace] = fnn_train(fx.samples, quick_config(), fx.norm);
  const auto a = fnn_encode(model, fx.samples.front());
  const auto b = fnn_encode(model, fx.samples.front());
  CHECK(a == b);

  // Force the first raw feature onto the peak of its "N" term: degree 1 there.
  Sample s = fx.samples.front();
  const LinguisticVariable& var = model.feature_vars[0];  // load_mean_d1
  const int n_index = var.term_index("N");
  REQUIRE(n_index >= 0);
  const auto* gauss = std::get_if<Gaussian>(&var.terms[n_index].second);
  REQUIRE(gauss != nullptr);
  for (std::size_t k = 24; k < 48; ++k) s.input[k] = gauss->center;  // d-1 block constant
  const auto encoded = fnn_encode(model, s);
  CHECK(encoded[n_index] == Catch::Approx(1.0));
}

TEST_CASE("fnn learns a constant-target sample") {
  Fixture fx;
  std::vector<Sample> one{fx.samples.front()};
  std::fill(one[0].target.begin(), one[0].target.end(), 0.4);
  FnnConfig cfg = quick_config();
  cfg.train.max_epochs = 5000;
  cfg.train.error_target = 1e-6;
  auto [model, trace] = fnn_train(one, cfg, fx.norm);
  CHECK(trace.converged);
  CHECK(trace.epoch_mse.back() <= 1e-6);
}

TEST_CASE("fnn training is deterministic") {
  const Fixture fx;
  auto [m1, t1] = fnn_train(fx.samples, quick_config(), fx.norm);
  auto [m2, t2] = fnn_train(fx.samples, quick_config(), fx.norm);
  CHECK(m1.core.w1 == m2.core.w1);
  CHECK(m1.core.w2 == m2.core.w2);
  CHECK(t1.epoch_mse == t2.epoch_mse);
}

TEST_CASE("forecasts denormalize through the shared spec") {
  const Fixture fx;
  auto [model, trace] = fnn_train(fx.samples, quick_config(), fx.norm);

  // force extreme core outputs via the output biases
  std::fill(model.core.w2.begin(), model.core.w2.end(), 0.0);
  std::fill(model.core.b2.begin(), model.core.b2.end(), -60.0);  // logistic -> ~0
  const auto low = fnn_forecast_mw(model, fx.samples.front());
  for (double v : low) CHECK(v == Catch::Approx(fx.norm.p_min).margin(1e-6));

  std::fill(model.core.b2.begin(), model.core.b2.end(), 60.0);   // logistic -> ~1
  auto high = fnn_forecast_mw(model, fx.samples.front());
  for (double v : high) CHECK(v == Catch::Approx(fx.norm.p_max).margin(1e-6));

  std::fill(model.core.b2.begin(), model.core.b2.end(), 0.0);    // logistic -> exactly 0.5
  const auto mid = fnn_forecast_mw(model, fx.samples.front());
  const double want = fx.norm.p_min + 0.5 * (fx.norm.p_max - fx.norm.p_min);
  for (double v : mid) CHECK(v == Catch::Approx(want).margin(1e-9));

  // outputs always land inside [p_min, p_max]
  auto [fresh, tr2] = fnn_train(fx.samples, quick_config(), fx.norm);
  for (const Sample& s : fx.samples) {
    for (double v : fnn_forecast_mw(fresh, s)) {
      CHECK(v >= fx.norm.p_min);
      CHECK(v <= fx.norm.p_max);
    }
  }
}

TEST_CASE("gradients flow through the squashed output") {
  const Fixture fx;
  FnnConfig cfg = quick_config();
  cfg.train.max_epochs = 1;
  auto [model, trace] = fnn_train(fx.samples, cfg, fx.norm);
  const TrainingPair pair{fnn_encode(model, fx.samples.front()), fx.samples.front().target};
  CHECK(gradient_check(model.core, pair, 1e-5) < 1e-4);
}
