#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "loadcast/domain.hpp"
#include "loadcast/rng.hpp"

namespace loadcast {

inline constexpr const char* csv_header = "timestamp,load_mw,temp_c,humidity_pct,wind_mps,wind_chill_c";

struct SyntheticConfig {
  std::int64_t start_day = make_day(1994, 1, 1);
  int num_days = 365;
  double base_peak = 1000.0;            // winter working-day peak, MW
  double weekend_dip = 0.15;            // fraction peak reduction on rest days
  std::set<std::int64_t> holiday_dates;
  double temp_coupling = 5.0;           // MW per degC below reference
  double noise_std = 8.0;               // MW
  std::uint64_t seed = 1;
};

namespace detail {

inline double parse_double_strict(const std::string& field, bool& ok) {
  const char* s = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  ok = end != s && *end == '\0' && std::isfinite(v);
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

// Environment Canada wind chill; falls back to air temperature outside the
// formula's validity range (T > 10 degC or wind < 4.8 km/h).
inline double wind_chill_c(double temp_c, double wind_mps) {
  const double v_kmh = wind_mps * 3.6;
  if (temp_c > 10.0 || v_kmh < 4.8) return temp_c;
  const double vp = std::pow(v_kmh, 0.16);
  return 13.12 + 0.6215 * temp_c - 11.37 * vp + 0.3965 * temp_c * vp;
}

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Normalized daily demand shape: morning and evening peaks over a shallow
// sinusoidal night baseline.
inline double daily_shape(int hour) {
  const double h = static_cast<double>(hour);
  const double night = 0.50 + 0.045 * std::sin(two_pi * (h - 3.0) / 24.0);
  const double morning = 0.32 * std::exp(-(h - 9.0) * (h - 9.0) / (2.0 * 2.4 * 2.4));
  const double evening = 0.24 * std::exp(-(h - 19.0) * (h - 19.0) / (2.0 * 2.6 * 2.6));
  return night + morning + evening;
}

inline double seasonal_temp(std::int64_t day, int hour) {
  const double doy = static_cast<double>(day_of_year(day));
  const double seasonal = 9.5 - 11.0 * std::cos(two_pi * (doy - 14.0) / 365.25);
  const double diurnal = 4.0 * std::cos(two_pi * (hour - 14.5) / 24.0);
  return seasonal + diurnal;
}

inline double baseline_humidity(std::int64_t day, int hour) {
  const double doy = static_cast<double>(day_of_year(day));
  return 68.0 + 14.0 * std::cos(two_pi * (doy - 20.0) / 365.25) +
         7.0 * std::sin(two_pi * (hour - 2.0) / 24.0);
}

inline double baseline_wind(std::int64_t day, int hour) {
  const double doy = static_cast<double>(day_of_year(day));
  return 4.2 + 1.6 * std::sin(two_pi * (doy - 80.0) / 365.25) +
         1.2 * std::sin(two_pi * (hour - 13.0) / 24.0);
}

inline double reflect_into(double v, double lo, double hi) {
  if (v < lo) return lo + (lo - v);
  if (v > hi) return hi - (v - hi);
  return v;
}

}  // namespace detail

// Deterministic synthetic load/weather series. With noise_std == 0 every
// record is a closed-form function of the calendar, so regenerating any
// sub-range reproduces the full run exactly.
inline LoadDataset generate_synthetic(const SyntheticConfig& cfg) {
  if (cfg.num_days < 4) raise(Errc::invalid_config, "num_days must be >= 4");
  if (!(cfg.base_peak > 0.0)) raise(Errc::invalid_config, "base_peak must be positive");
  if (!(cfg.weekend_dip > 0.0 && cfg.weekend_dip < 1.0))
    raise(Errc::invalid_config, "weekend_dip must lie in (0,1)");
  if (!(cfg.noise_std >= 0.0)) raise(Errc::invalid_config, "noise_std must be >= 0");

  const bool noisy = cfg.noise_std > 0.0;
  Rng rng(cfg.seed);
  double humidity_walk = 0.0;
  double wind_walk = 0.0;

  LoadDataset ds;
  ds.holidays = cfg.holiday_dates;
  ds.records.reserve(static_cast<std::size_t>(cfg.num_days) * 24);

  constexpr double temp_reference_c = 10.0;

  for (int d = 0; d < cfg.num_days; ++d) {
    const std::int64_t day = cfg.start_day + d;
    const int wd = weekday_monday0(day);
    const bool rest_day = day_type(day, cfg.holiday_dates) == DayType::weekend;
    for (int h = 0; h < 24; ++h) {
      double temp = detail::seasonal_temp(day, h);
      double humidity = detail::baseline_humidity(day, h);
      double wind = detail::baseline_wind(day, h);
      if (noisy) {
        temp += rng.normal(0.0, 0.4);
        humidity_walk = detail::reflect_into(humidity_walk + rng.normal(0.0, 0.5), -8.0, 8.0);
        wind_walk = detail::reflect_into(wind_walk + rng.normal(0.0, 0.15), -1.5, 1.5);
        humidity += humidity_walk;
        wind += wind_walk;
      }
      humidity = std::clamp(humidity, 0.0, 100.0);
      wind = std::max(wind, 0.0);

      double factor = rest_day ? (1.0 - cfg.weekend_dip) : 1.0;
      if (!rest_day && wd == 0 && h >= 5 && h <= 11) factor *= 1.03;   // Monday pickup
      if (!rest_day && wd == 4 && h >= 15 && h <= 22) factor *= 0.97;  // Friday wind-down

      double load = cfg.base_peak * detail::daily_shape(h) * factor +
                    cfg.temp_coupling * (temp_reference_c - temp);
      if (noisy) load += rng.normal(0.0, cfg.noise_std);
      load = std::max(load, 0.0);

      HourlyRecord rec;
      rec.timestamp = HourStamp{day * 24 + h};
      rec.load_mw = load;
      rec.temp_c = temp;
      rec.humidity_pct = humidity;
      rec.wind_mps = wind;
      rec.wind_chill_c = detail::wind_chill_c(temp, wind);
      ds.records.push_back(rec);
    }
  }
  validate_dataset(ds);
  return ds;
}

// Fixed-date Czech public holidays for every year the range touches.
inline std::set<std::int64_t> czech_holidays(std::int64_t first_day, std::int64_t last_day) {
  std::set<std::int64_t> out;
  const int y0 = civil_from_day(first_day).year;
  const int y1 = civil_from_day(last_day).year;
  for (int y = y0; y <= y1; ++y) {
    const std::pair<unsigned, unsigned> fixed[] = {{1, 1}, {5, 1}, {5, 8}, {7, 5}, {7, 6},
                                                   {9, 28}, {10, 28}, {11, 17}, {12, 24},
                                                   {12, 25}, {12, 26}};
    for (auto [m, d] : fixed) {
      const std::int64_t day = make_day(y, m, d);
      if (day >= first_day && day <= last_day) out.insert(day);
    }
  }
  return out;
}

inline LoadDataset parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) raise(Errc::schema_mismatch, "empty input, header row required");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header)
    raise(Errc::schema_mismatch, "expected header '" + std::string(csv_header) + "'");

  LoadDataset ds;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 6)
      raise(Errc::malformed_row,
            "line " + std::to_string(line_no) + ": expected 6 fields, got " +
                std::to_string(fields.size()));
    const auto ts = parse_hour(fields[0]);
    if (!ts)
      raise(Errc::malformed_row, "line " + std::to_string(line_no) + ": bad timestamp '" +
                                     fields[0] + "'");
    HourlyRecord rec;
    rec.timestamp = *ts;
    double* const slots[] = {&rec.load_mw, &rec.temp_c, &rec.humidity_pct, &rec.wind_mps,
                             &rec.wind_chill_c};
    for (std::size_t i = 0; i < 5; ++i) {
      bool ok = false;
      *slots[i] = detail::parse_double_strict(fields[i + 1], ok);
      if (!ok)
        raise(Errc::malformed_row, "line " + std::to_string(line_no) + ": bad number '" +
                                       fields[i + 1] + "'");
    }
    ds.records.push_back(rec);
  }
  validate_dataset(ds);
  return ds;
}

inline std::string to_csv(const LoadDataset& ds) {
  std::string out = csv_header;
  out += '\n';
  char buf[160];
  for (const HourlyRecord& r : ds.records) {
    std::snprintf(buf, sizeof buf, "%s,%.6f,%.4f,%.4f,%.4f,%.4f\n",
                  format_hour(r.timestamp).c_str(), r.load_mw, r.temp_c, r.humidity_pct,
                  r.wind_mps, r.wind_chill_c);
    out += buf;
  }
  return out;
}

inline std::set<std::int64_t> parse_holidays(std::istream& in) {
  std::set<std::int64_t> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto day = parse_date(line);
    if (!day)
      raise(Errc::malformed_row, "holiday line " + std::to_string(line_no) + ": bad date '" +
                                     line + "'");
    out.insert(*day);
  }
  return out;
}

inline std::string format_holidays(const std::set<std::int64_t>& holidays) {
  std::string out;
  for (std::int64_t day : holidays) {
    out += format_date(day);
    out += '\n';
  }
  return out;
}

struct DayTypeSplit {
  std::vector<std::int64_t> weekday_days;
  std::vector<std::int64_t> weekend_days;
};

// Classifies every calendar day covered by the dataset; the two partitions
// are disjoint and exhaustive.
inline DayTypeSplit split_by_daytype(const LoadDataset& ds) {
  DayTypeSplit split;
  if (ds.empty()) return split;
  const std::int64_t first = ds.records.front().timestamp.day();
  const std::int64_t last = ds.records.back().timestamp.day();
  for (std::int64_t day = first; day <= last; ++day) {
    if (day_type(day, ds.holidays) == DayType::weekday)
      split.weekday_days.push_back(day);
    else
      split.weekend_days.push_back(day);
  }
  return split;
}

}  // namespace loadcast
