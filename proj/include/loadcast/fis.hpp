#pragma once

#include <string>
#include <vector>

#include "loadcast/features.hpp"
#include "loadcast/fuzzy.hpp"

namespace loadcast {

// Linguistic label families for the five fuzzified quantities.
inline const std::vector<std::string>& load_labels() {
  static const std::vector<std::string> v{"ExL", "VL", "L", "N", "H", "VH", "ExH"};
  return v;
}
inline const std::vector<std::string>& temperature_labels() {
  static const std::vector<std::string> v{"ExC", "VC", "C", "N", "W", "H", "VH", "ExH"};
  return v;
}
inline const std::vector<std::string>& humidity_labels() {
  static const std::vector<std::string> v{"ExL", "VL", "L", "M", "H", "VH", "ExH"};
  return v;
}
inline const std::vector<std::string>& wind_labels() {
  static const std::vector<std::string> v{"Z", "PVS", "PS", "M", "PM", "B", "PB"};
  return v;
}
inline const std::vector<std::string>& wind_chill_labels() {
  static const std::vector<std::string> v{"Z", "VVL", "VL", "L", "H", "VH", "ExH"};
  return v;
}

struct FisConfig {
  MfShape shape = MfShape::gaussian;
  double universe_pad = 0.05;  // widen fitted universes to reduce clamping
};

// Per-hour Mamdani forecaster. Each target hour is predicted from the load
// at the same hour two days earlier plus the previous day's mean weather;
// the rule base is induced from the training samples.
struct FisModel {
  VariableSet input_vars;          // lag_load, temperature, humidity, wind_speed, wind_chill
  LinguisticVariable output_load;  // MW
  std::vector<MamdaniRule> rules;
  MfShape shape = MfShape::gaussian;
};

namespace detail {

struct FisRow {
  CrispInputs inputs;
  double output_mw = 0.0;
};

inline double mean_of_day(const LoadDataset& ds, std::int64_t first_index,
                          double HourlyRecord::* field) {
  double sum = 0.0;
  for (std::int64_t i = first_index; i < first_index + 24; ++i) sum += ds.records[i].*field;
  return sum / 24.0;
}

inline CrispInputs fis_inputs(const LoadDataset& ds, std::int64_t t, int hour) {
  CrispInputs in;
  in["lag_load"] = ds.records[t - 48 + hour].load_mw;
  in["temperature"] = mean_of_day(ds, t - 24, &HourlyRecord::temp_c);
  in["humidity"] = mean_of_day(ds, t - 24, &HourlyRecord::humidity_pct);
  in["wind_speed"] = mean_of_day(ds, t - 24, &HourlyRecord::wind_mps);
  in["wind_chill"] = mean_of_day(ds, t - 24, &HourlyRecord::wind_chill_c);
  return in;
}

inline NormalizationSpec padded_span(double lo, double hi, double pad) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double margin = (hi - lo) * pad;
  return NormalizationSpec{lo - margin, hi + margin};
}

}  // namespace detail

inline FisModel fis_train(const LoadDataset& ds, const std::vector<Sample>& samples,
                          const FisConfig& cfg = {}) {
  if (samples.empty()) raise(Errc::empty_input, "no samples");

  std::vector<detail::FisRow> rows;
  rows.reserve(samples.size() * target_width);
  for (const Sample& s : samples) {
    const std::int64_t t = ds.index_of(s.target_start);
    if (t < static_cast<std::int64_t>(history_hours))
      raise(Errc::insufficient_history, "sample history outside dataset");
    for (int h = 0; h < static_cast<int>(target_width); ++h) {
      detail::FisRow row;
      row.inputs = detail::fis_inputs(ds, t, h);
      row.output_mw = ds.records[t + h].load_mw;
      rows.push_back(std::move(row));
    }
  }

  auto span_of = [&](const char* key) {
    double lo = rows.front().inputs.at(key);
    double hi = lo;
    for (const auto& r : rows) {
      lo = std::min(lo, r.inputs.at(key));
      hi = std::max(hi, r.inputs.at(key));
    }
    return detail::padded_span(lo, hi, cfg.universe_pad);
  };

  FisModel model;
  model.shape = cfg.shape;
  const auto lag = span_of("lag_load");
  const auto temp = span_of("temperature");
  const auto hum = span_of("humidity");
  const auto wind = span_of("wind_speed");
  const auto chill = span_of("wind_chill");
  model.input_vars = {
      make_partition("lag_load", lag.p_min, lag.p_max, load_labels(), cfg.shape),
      make_partition("temperature", temp.p_min, temp.p_max, temperature_labels(), cfg.shape),
      make_partition("humidity", hum.p_min, hum.p_max, humidity_labels(), cfg.shape),
      make_partition("wind_speed", wind.p_min, wind.p_max, wind_labels(), cfg.shape),
      make_partition("wind_chill", chill.p_min, chill.p_max, wind_chill_labels(), cfg.shape),
  };
  double out_lo = rows.front().output_mw;
  double out_hi = out_lo;
  for (const auto& r : rows) {
    out_lo = std::min(out_lo, r.output_mw);
    out_hi = std::max(out_hi, r.output_mw);
  }
  const auto out_span = detail::padded_span(out_lo, out_hi, cfg.universe_pad);
  model.output_load =
      make_partition("load", out_span.p_min, out_span.p_max, load_labels(), cfg.shape);

  std::vector<std::pair<CrispInputs, double>> pairs;
  pairs.reserve(rows.size());
  for (auto& r : rows) pairs.emplace_back(std::move(r.inputs), r.output_mw);
  model.rules = generate_rules(pairs, model.input_vars, model.output_load);
  return model;
}

// 48 hourly loads in MW. Hours whose inputs fire no rule fall back to the
// lag-48 load (persistence); *fallback_hours counts them when given.
inline std::vector<double> fis_forecast_mw(const FisModel& model, const LoadDataset& ds,
                                           HourStamp target_start, int* fallback_hours = nullptr) {
  const std::int64_t t = ds.index_of(target_start);
  if (t < static_cast<std::int64_t>(history_hours))
    raise(Errc::insufficient_history, "need 48 hours before " + format_hour(target_start));

  std::vector<double> out(target_width, 0.0);
  int fallbacks = 0;
  for (int h = 0; h < static_cast<int>(target_width); ++h) {
    const CrispInputs inputs = detail::fis_inputs(ds, t, h);
    try {
      out[h] = mamdani_infer(model.rules, model.input_vars, inputs, model.output_load);
    } catch (const Error& e) {
      if (e.code() != Errc::no_rule_fired) throw;
      out[h] = inputs.at("lag_load");
      ++fallbacks;
    }
  }
  if (fallback_hours) *fallback_hours = fallbacks;
  return out;
}

}  // namespace loadcast
