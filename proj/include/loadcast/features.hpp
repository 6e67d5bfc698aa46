#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "loadcast/domain.hpp"

namespace loadcast {

inline constexpr std::size_t input_width = 62;
inline constexpr std::size_t target_width = 48;
inline constexpr std::size_t history_hours = 48;

// Input vector layout (all entries in [0,1]):
//   0..47   normalized loads of hours t-48 .. t-1, chronological
//   48..53  max, min, avg temperature of day d-1, then of day d-2
//   54..55  mean humidity of d-1, d-2
//   56..57  mean wind speed of d-1, d-2
//   58..59  mean wind chill of d-1, d-2
//   60..61  day-of-week of the first target day as rescaled (sin, cos)
struct WeatherNorms {
  NormalizationSpec temperature;
  NormalizationSpec humidity;
  NormalizationSpec wind_speed;
  NormalizationSpec wind_chill;
};

inline WeatherNorms fit_weather_norms(const LoadDataset& ds) {
  if (ds.empty()) raise(Errc::empty_input, "cannot fit weather norms on empty dataset");
  auto fit = [&](auto field) {
    double lo = ds.records.front().*field;
    double hi = lo;
    for (const HourlyRecord& r : ds.records) {
      lo = std::min(lo, r.*field);
      hi = std::max(hi, r.*field);
    }
    // A flat series still needs a usable range; widen symmetrically.
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
    return NormalizationSpec{lo, hi};
  };
  return WeatherNorms{fit(&HourlyRecord::temp_c), fit(&HourlyRecord::humidity_pct),
                      fit(&HourlyRecord::wind_mps), fit(&HourlyRecord::wind_chill_c)};
}

struct Sample {
  std::vector<double> input;   // input_width entries
  std::vector<double> target;  // target_width entries
  HourStamp target_start;      // hour 00:00 of the first forecast day
  DayType daytype = DayType::weekday;
};

namespace detail {

struct DayStats {
  double max, min, avg;
};

template <typename Field>
DayStats day_stats(const LoadDataset& ds, std::int64_t first_index, Field field) {
  DayStats s{ds.records[first_index].*field, ds.records[first_index].*field, 0.0};
  double sum = 0.0;
  for (std::int64_t i = first_index; i < first_index + 24; ++i) {
    const double v = ds.records[i].*field;
    s.max = std::max(s.max, v);
    s.min = std::min(s.min, v);
    sum += v;
  }
  s.avg = sum / 24.0;
  return s;
}

}  // namespace detail

inline std::vector<double> encode_input(const LoadDataset& ds, HourStamp target_start,
                                        const NormalizationSpec& load_norm,
                                        const WeatherNorms& weather) {
  const std::int64_t t = ds.index_of(target_start);
  if (t < static_cast<std::int64_t>(history_hours))
    raise(Errc::insufficient_history,
          "need 48 hours before " + format_hour(target_start));

  std::vector<double> x(input_width, 0.0);
  for (std::size_t k = 0; k < history_hours; ++k)
    x[k] = normalize(load_norm, ds.records[t - 48 + k].load_mw);

  const std::int64_t d1 = t - 24;  // first hour of day d-1
  const std::int64_t d2 = t - 48;
  const auto t1 = detail::day_stats(ds, d1, &HourlyRecord::temp_c);
  const auto t2 = detail::day_stats(ds, d2, &HourlyRecord::temp_c);
  x[48] = normalize(weather.temperature, t1.max);
  x[49] = normalize(weather.temperature, t1.min);
  x[50] = normalize(weather.temperature, t1.avg);
  x[51] = normalize(weather.temperature, t2.max);
  x[52] = normalize(weather.temperature, t2.min);
  x[53] = normalize(weather.temperature, t2.avg);
  x[54] = normalize(weather.humidity, detail::day_stats(ds, d1, &HourlyRecord::humidity_pct).avg);
  x[55] = normalize(weather.humidity, detail::day_stats(ds, d2, &HourlyRecord::humidity_pct).avg);
  x[56] = normalize(weather.wind_speed, detail::day_stats(ds, d1, &HourlyRecord::wind_mps).avg);
  x[57] = normalize(weather.wind_speed, detail::day_stats(ds, d2, &HourlyRecord::wind_mps).avg);
  x[58] = normalize(weather.wind_chill, detail::day_stats(ds, d1, &HourlyRecord::wind_chill_c).avg);
  x[59] = normalize(weather.wind_chill, detail::day_stats(ds, d2, &HourlyRecord::wind_chill_c).avg);

  // Cyclical code avoids a false ordinal gap between Sunday and Monday.
  const double angle = 6.283185307179586476925286766559 *
                       static_cast<double>(weekday_monday0(target_start.day())) / 7.0;
  x[60] = (std::sin(angle) + 1.0) / 2.0;
  x[61] = (std::cos(angle) + 1.0) / 2.0;
  return x;
}

inline std::vector<double> encode_target(const LoadDataset& ds, HourStamp target_start,
                                         const NormalizationSpec& load_norm) {
  const std::int64_t t = ds.index_of(target_start);
  if (t < 0 || t + static_cast<std::int64_t>(target_width) > static_cast<std::int64_t>(ds.size()))
    raise(Errc::insufficient_future,
          "need 48 hours from " + format_hour(target_start));
  std::vector<double> y(target_width, 0.0);
  for (std::size_t k = 0; k < target_width; ++k)
    y[k] = normalize(load_norm, ds.records[t + k].load_mw);
  return y;
}

// One sample per eligible midnight, stepping by stride_days. Eligibility is
// 48 hours of history and 48 hours of target inside the series.
inline std::vector<Sample> build_samples(const LoadDataset& ds, int stride_days,
                                         const NormalizationSpec& load_norm,
                                         const WeatherNorms& weather) {
  if (stride_days < 1) raise(Errc::invalid_config, "stride must be >= 1");
  std::vector<Sample> samples;
  if (ds.empty()) return samples;

  const std::int64_t first_day = ds.records.front().timestamp.day();
  const std::int64_t last_day = ds.records.back().timestamp.day();
  for (std::int64_t day = first_day + 2; day + 1 <= last_day; day += stride_days) {
    const HourStamp start{day * 24};
    if (ds.index_of(start) < static_cast<std::int64_t>(history_hours)) continue;
    if (ds.index_of(start + (static_cast<std::int64_t>(target_width) - 1)) < 0) continue;
    Sample s;
    s.input = encode_input(ds, start, load_norm, weather);
    s.target = encode_target(ds, start, load_norm);
    s.target_start = start;
    s.daytype = day_type(day, ds.holidays);
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace loadcast
