#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "loadcast/features.hpp"
#include "loadcast/fis.hpp"
#include "loadcast/train.hpp"

namespace loadcast {

struct FnnConfig {
  int hidden = 24;
  MfShape shape = MfShape::gaussian;
  double universe_pad = 0.05;
  TrainConfig train;
};

// Hybrid fuzzy-neural cascade: raw features are fuzzified into membership
// degrees, a dense core maps them to one normalized load per hour, and the
// output is converted back to MW with P = Pmin + Pn * dP.
//
// Fuzzified raw features, in order:
//   0..7   load summaries: mean/min/max of day d-1, mean/min/max of day d-2,
//          last-hour load, 24-hour-lag load          (7 terms each)
//   8..13  temperature features (max/min/avg, d-1 then d-2)  (8 terms each)
//   14..15 humidity means d-1, d-2                   (7 terms each)
//   16..17 wind speed means d-1, d-2                 (7 terms each)
//   18..19 wind chill means d-1, d-2                 (7 terms each)
// The day-of-week (sin, cos) pair passes through crisp.
struct FnnModel {
  std::vector<LinguisticVariable> feature_vars;
  DenseNet core;  // logistic output keeps every prediction inside [0,1]
  NormalizationSpec load_norm;

  std::size_t encoded_width() const {
    std::size_t w = 2;  // crisp day-of-week pair
    for (const auto& v : feature_vars) w += v.terms.size();
    return w;
  }
};

inline constexpr std::size_t fnn_raw_feature_count = 20;

inline std::vector<double> fnn_raw_features(const Sample& sample) {
  if (sample.input.size() != input_width)
    raise(Errc::layout_mismatch, "sample input must have 62 entries");
  const auto& x = sample.input;
  auto stats = [&](std::size_t first) {
    double mn = x[first], mx = x[first], sum = 0.0;
    for (std::size_t i = first; i < first + 24; ++i) {
      mn = std::min(mn, x[i]);
      mx = std::max(mx, x[i]);
      sum += x[i];
    }
    return std::array<double, 3>{sum / 24.0, mn, mx};
  };
  const auto d1 = stats(24);  // hours t-24 .. t-1
  const auto d2 = stats(0);   // hours t-48 .. t-25
  std::vector<double> raw;
  raw.reserve(fnn_raw_feature_count);
  raw.insert(raw.end(), {d1[0], d1[1], d1[2], d2[0], d2[1], d2[2], x[47], x[24]});
  for (std::size_t i = 48; i < 60; ++i) raw.push_back(x[i]);
  return raw;
}

inline std::vector<double> fnn_encode(const FnnModel& model, const Sample& sample) {
  const std::vector<double> raw = fnn_raw_features(sample);
  if (raw.size() != model.feature_vars.size())
    raise(Errc::layout_mismatch, "feature variable count does not match raw feature count");
  std::vector<double> encoded;
  encoded.reserve(model.encoded_width());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto degrees = fuzzify(model.feature_vars[i], raw[i]);
    encoded.insert(encoded.end(), degrees.begin(), degrees.end());
  }
  encoded.push_back(sample.input[60]);
  encoded.push_back(sample.input[61]);
  return encoded;
}

inline std::pair<FnnModel, TrainTrace> fnn_train(const std::vector<Sample>& samples,
                                                 const FnnConfig& cfg,
                                                 const NormalizationSpec& load_norm) {
  if (samples.empty()) raise(Errc::empty_input, "no samples");

  std::vector<std::vector<double>> raws;
  raws.reserve(samples.size());
  for (const Sample& s : samples) raws.push_back(fnn_raw_features(s));

  static const char* const names[fnn_raw_feature_count] = {
      "load_mean_d1", "load_min_d1", "load_max_d1", "load_mean_d2", "load_min_d2",
      "load_max_d2", "load_last_hour", "load_lag_24h", "temp_max_d1", "temp_min_d1",
      "temp_avg_d1", "temp_max_d2", "temp_min_d2", "temp_avg_d2", "humidity_d1",
      "humidity_d2", "wind_d1", "wind_d2", "chill_d1", "chill_d2"};

  FnnModel model;
  model.load_norm = load_norm;
  for (std::size_t f = 0; f < fnn_raw_feature_count; ++f) {
    double lo = raws.front()[f];
    double hi = lo;
    for (const auto& r : raws) {
      lo = std::min(lo, r[f]);
      hi = std::max(hi, r[f]);
    }
    const auto span = detail::padded_span(lo, hi, cfg.universe_pad);
    const auto& labels = f < 8    ? load_labels()
                         : f < 14 ? temperature_labels()
                         : f < 16 ? humidity_labels()
                         : f < 18 ? wind_labels()
                                  : wind_chill_labels();
    model.feature_vars.push_back(
        make_partition(names[f], span.p_min, span.p_max, labels, cfg.shape));
  }

  TrainingSet pairs;
  pairs.reserve(samples.size());
  for (const Sample& s : samples) pairs.emplace_back(fnn_encode(model, s), s.target);

  model.core = DenseNet::init(static_cast<int>(model.encoded_width()), cfg.hidden,
                              static_cast<int>(target_width), cfg.train.seed,
                              HiddenActivation::tanh_sigmoid, OutputActivation::logistic);
  TrainTrace trace = train_backprop(model.core, pairs, cfg.train);
  return {std::move(model), std::move(trace)};
}

inline std::vector<double> fnn_forecast_normalized(const FnnModel& model, const Sample& sample) {
  return mlp_forward(model.core, fnn_encode(model, sample));
}

inline std::vector<double> fnn_forecast_mw(const FnnModel& model, const Sample& sample) {
  std::vector<double> out = fnn_forecast_normalized(model, sample);
  for (double& v : out) v = denormalize(model.load_norm, v);
  return out;
}

}  // namespace loadcast
