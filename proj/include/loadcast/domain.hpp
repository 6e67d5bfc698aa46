#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "loadcast/errors.hpp"
#include "loadcast/timeutil.hpp"

namespace loadcast {

struct HourlyRecord {
  HourStamp timestamp;
  double load_mw = 0.0;
  double temp_c = 0.0;
  double humidity_pct = 0.0;
  double wind_mps = 0.0;
  double wind_chill_c = 0.0;
};

// Two days of history plus two days of target is the smallest usable series.
inline constexpr std::size_t min_dataset_hours = 96;

struct LoadDataset {
  std::vector<HourlyRecord> records;     // time-ordered, 1-hour spacing
  std::set<std::int64_t> holidays;       // days since epoch

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }

  HourStamp start() const { return records.front().timestamp; }
  HourStamp end() const { return records.back().timestamp; }

  // Index of the record at t, or -1 when t is outside the series.
  std::int64_t index_of(HourStamp t) const {
    if (records.empty()) return -1;
    const std::int64_t i = t - records.front().timestamp;
    if (i < 0 || i >= static_cast<std::int64_t>(records.size())) return -1;
    return i;
  }

  bool is_holiday(std::int64_t day) const { return holidays.count(day) != 0; }
};

enum class DayType { weekday, weekend };

inline const char* daytype_name(DayType d) {
  return d == DayType::weekday ? "weekday" : "weekend";
}

// Saturdays, Sundays and holidays all behave like rest days.
inline DayType day_type(std::int64_t day, const std::set<std::int64_t>& holidays) {
  const int wd = weekday_monday0(day);
  if (wd >= 5 || holidays.count(day) != 0) return DayType::weekend;
  return DayType::weekday;
}

inline const LoadDataset& validate_dataset(const LoadDataset& ds) {
  if (ds.records.size() < min_dataset_hours)
    raise(Errc::dataset_too_short,
          "need at least 96 hourly records, got " + std::to_string(ds.records.size()));
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const HourlyRecord& r = ds.records[i];
    if (i > 0) {
      const std::int64_t step = r.timestamp - ds.records[i - 1].timestamp;
      if (step != 1) {
        const HourStamp missing = ds.records[i - 1].timestamp + 1;
        raise(Errc::gap_in_series, "first missing hour " + format_hour(missing));
      }
    }
    if (!(r.load_mw >= 0.0))
      raise(Errc::negative_load,
            "load " + std::to_string(r.load_mw) + " MW at " + format_hour(r.timestamp));
    if (!(r.humidity_pct >= 0.0 && r.humidity_pct <= 100.0))
      raise(Errc::out_of_range_humidity,
            "humidity " + std::to_string(r.humidity_pct) + " at " + format_hour(r.timestamp));
    if (!(r.wind_mps >= 0.0))
      raise(Errc::negative_wind,
            "wind speed " + std::to_string(r.wind_mps) + " at " + format_hour(r.timestamp));
  }
  return ds;
}

struct NormalizationSpec {
  double p_min = 0.0;
  double p_max = 1.0;

  double range() const { return p_max - p_min; }
};

inline NormalizationSpec fit_normalizer(const LoadDataset& ds) {
  if (ds.empty()) raise(Errc::empty_input, "cannot fit normalizer on empty dataset");
  double lo = ds.records.front().load_mw;
  double hi = lo;
  for (const HourlyRecord& r : ds.records) {
    lo = std::min(lo, r.load_mw);
    hi = std::max(hi, r.load_mw);
  }
  if (!(hi > lo)) raise(Errc::degenerate_range, "all loads equal " + std::to_string(lo));
  return NormalizationSpec{lo, hi};
}

// Min-max to [0,1]; out-of-range inputs clamp because test-year values may
// exceed training-year extremes.
inline double normalize(const NormalizationSpec& spec, double p) {
  const double v = (p - spec.p_min) / spec.range();
  return std::clamp(v, 0.0, 1.0);
}

// P = Pmin + Pn * dP. Strict on the input: model outputs are contractually
// inside [0,1], so anything else is a bug upstream.
inline double denormalize(const NormalizationSpec& spec, double p_n) {
  if (!(p_n >= 0.0 && p_n <= 1.0))
    raise(Errc::out_of_range, "normalized load " + std::to_string(p_n) + " outside [0,1]");
  return spec.p_min + p_n * spec.range();
}

}  // namespace loadcast
