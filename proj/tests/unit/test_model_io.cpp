#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <filesystem>

#include "loadcast/data.hpp"
#include "loadcast/model_io.hpp"

using namespace loadcast;

namespace {

struct Fixture {
  LoadDataset ds;
  NormalizationSpec norm;
  WeatherNorms weather;
  std::vector<Sample> samples;

  Fixture() {
    SyntheticConfig cfg;
    cfg.num_days = 14;
    cfg.noise_std = 0.0;
    cfg.seed = 21;
    ds = generate_synthetic(cfg);
    norm = fit_normalizer(ds);
    weather = fit_weather_norms(ds);
    samples = build_samples(ds, 1, norm, weather);
  }

  ModelFile base(const std::string& kind) const {
    ModelFile f;
    f.kind = kind;
    f.train_start_day = ds.start().day();
    f.train_end_day = ds.end().day();
    f.load_norm = norm;
    f.weather_norms = weather;
    return f;
  }
};

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void check_equal_forecasts(const Forecaster& a, const Forecaster& b, const LoadDataset& ds,
                           const std::vector<Sample>& samples) {
  const auto ya = a.forecast_mw(ds, samples);
  const auto yb = b.forecast_mw(ds, samples);
  REQUIRE(ya.size() == yb.size());
  for (std::size_t s = 0; s < ya.size(); ++s)
    for (std::size_t k = 0; k < ya[s].size(); ++k) CHECK(ya[s][k] == yb[s][k]);
}

}  // namespace

TEST_CASE("dense and elman round trips are bit-faithful") {
  const Fixture fx;
  TrainConfig cfg;
  cfg.max_epochs = 30;
  cfg.error_target = 1e-12;

  TrainingSet pairs;
  for (const Sample& s : fx.samples) pairs.emplace_back(s.input, s.target);

  ModelFile mf = fx.base("mlp");
  DenseNet net = DenseNet::init(static_cast<int>(input_width), 6,
                                static_cast<int>(target_width), 3);
  train_backprop(net, pairs, cfg);
  mf.dense = net;
  const std::string path = temp_path("loadcast_mlp.json");
  save_model_file(mf, path);
  const ModelFile back = load_model_file(path);
  CHECK(back.kind == "mlp");
  CHECK(back.dense->w1 == net.w1);
  CHECK(back.dense->b1 == net.b1);
  CHECK(back.dense->w2 == net.w2);
  CHECK(back.dense->b2 == net.b2);
  CHECK(back.load_norm.p_min == fx.norm.p_min);
  check_equal_forecasts(*make_forecaster(mf), *make_forecaster(back), fx.ds, fx.samples);

  ModelFile emf = fx.base("elman");
  ElmanNet enet = ElmanNet::init(static_cast<int>(input_width), 5,
                                 static_cast<int>(target_width), 4);
  train_backprop(enet, pairs, cfg);
  emf.elman = enet;
  const std::string epath = temp_path("loadcast_elman.json");
  save_model_file(emf, epath);
  const ModelFile eback = load_model_file(epath);
  CHECK(eback.elman->wc == enet.wc);
  check_equal_forecasts(*make_forecaster(emf), *make_forecaster(eback), fx.ds, fx.samples);
}

TEST_CASE("rbf round trip preserves centers and widths") {
  const Fixture fx;
  TrainingSet pairs;
  for (const Sample& s : fx.samples) pairs.emplace_back(s.input, s.target);
  TrainConfig cfg;
  ModelFile mf = fx.base("rbfn");
  mf.rbf = rbf_train(pairs, 5, cfg);
  const std::string path = temp_path("loadcast_rbf.json");
  save_model_file(mf, path);
  const ModelFile back = load_model_file(path);
  CHECK(back.rbf->centers == mf.rbf->centers);
  CHECK(back.rbf->widths == mf.rbf->widths);
  CHECK(back.rbf->w == mf.rbf->w);
  CHECK(back.rbf->b == mf.rbf->b);
  check_equal_forecasts(*make_forecaster(mf), *make_forecaster(back), fx.ds, fx.samples);
}

TEST_CASE("hopfield persists patterns and rebuilds identical weights") {
  const Fixture fx;
  ModelFile mf = fx.base("hopfield");
  mf.hopfield = HopfieldForecaster::fit(fx.samples, ThermoCodec{4}, 9);
  const std::string path = temp_path("loadcast_hopfield.json");
  save_model_file(mf, path);
  const ModelFile back = load_model_file(path);
  CHECK(back.hopfield->stored == mf.hopfield->stored);
  CHECK(back.hopfield->net.w == mf.hopfield->net.w);
  CHECK(back.hopfield->seed == mf.hopfield->seed);
  check_equal_forecasts(*make_forecaster(mf), *make_forecaster(back), fx.ds, fx.samples);
}

TEST_CASE("fis round trip reparses the rule base exactly") {
  const Fixture fx;
  ModelFile mf = fx.base("fis");
  mf.fis = fis_train(fx.ds, fx.samples, FisConfig{});
  const std::string path = temp_path("loadcast_fis.json");
  save_model_file(mf, path);
  const ModelFile back = load_model_file(path);
  REQUIRE(back.fis->rules.size() == mf.fis->rules.size());
  CHECK(format_rules(back.fis->rules) == format_rules(mf.fis->rules));
  CHECK(back.fis->output_load.lo == mf.fis->output_load.lo);
  check_equal_forecasts(*make_forecaster(mf), *make_forecaster(back), fx.ds, fx.samples);
}

TEST_CASE("fnn round trip keeps partitions and core") {
  const Fixture fx;
  FnnConfig cfg;
  cfg.hidden = 4;
  cfg.train.max_epochs = 20;
  auto [model, trace] = fnn_train(fx.samples, cfg, fx.norm);
  ModelFile mf = fx.base("fnn");
  mf.fnn = std::move(model);
  const std::string path = temp_path("loadcast_fnn.json");
  save_model_file(mf, path);
  const ModelFile back = load_model_file(path);
  CHECK(back.fnn->core.w1 == mf.fnn->core.w1);
  CHECK(back.fnn->feature_vars.size() == mf.fnn->feature_vars.size());
  check_equal_forecasts(*make_forecaster(mf), *make_forecaster(back), fx.ds, fx.samples);
}

TEST_CASE("bad model files are rejected") {
  const std::string path = temp_path("loadcast_bad.json");
  write_text_file(path, "{\"format\": \"something-else\", \"version\": 1}");
  CHECK_THROWS_MATCHES(load_model_file(path), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::schema_mismatch;
                       }));
  CHECK_THROWS_MATCHES(load_model_file(temp_path("does_not_exist.json")), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.code() == Errc::io_failure; }));
}
