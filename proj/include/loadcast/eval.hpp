#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "loadcast/forecaster.hpp"

namespace loadcast {

inline double mape(const std::vector<double>& actual, const std::vector<double>& predicted) {
  if (actual.empty()) raise(Errc::empty_input, "mape over empty sequences");
  if (actual.size() != predicted.size())
    raise(Errc::layout_mismatch, "mape sequences differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (!(actual[i] > 0.0))
      raise(Errc::zero_actual, "actual value " + std::to_string(actual[i]) + " at index " +
                                   std::to_string(i));
    sum += std::fabs(actual[i] - predicted[i]) / actual[i];
  }
  return sum / static_cast<double>(actual.size()) * 100.0;
}

enum class MapDenominator { predicted, actual };

// Maximum absolute percentage error. The denominator defaults to the
// predicted value; `denominator` switches to the conventional form.
inline double map_err(const std::vector<double>& actual, const std::vector<double>& predicted,
                      MapDenominator denominator = MapDenominator::predicted) {
  if (actual.empty()) raise(Errc::empty_input, "map over empty sequences");
  if (actual.size() != predicted.size())
    raise(Errc::layout_mismatch, "map sequences differ in length");
  double worst = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double den = denominator == MapDenominator::predicted ? predicted[i] : actual[i];
    if (!(den > 0.0)) {
      if (denominator == MapDenominator::predicted)
        raise(Errc::zero_predicted, "predicted value " + std::to_string(predicted[i]) +
                                        " at index " + std::to_string(i));
      raise(Errc::zero_actual, "actual value " + std::to_string(actual[i]) + " at index " +
                                   std::to_string(i));
    }
    worst = std::max(worst, std::fabs(actual[i] - predicted[i]) / den * 100.0);
  }
  return worst;
}

struct HourRow {
  HourStamp timestamp;
  double actual_mw = 0.0;
  double predicted_mw = 0.0;
};

struct DayRow {
  std::int64_t day = 0;
  DayType daytype = DayType::weekday;
  double mape_pct = 0.0;
  double map_pct = 0.0;
};

struct ForecastReport {
  std::string model_name;
  std::vector<HourRow> per_hour;
  std::vector<DayRow> per_day;
  double overall_mape = 0.0;
  double overall_map = 0.0;
  MapDenominator map_denominator = MapDenominator::predicted;
};

namespace detail {

inline void day_metrics(const std::vector<HourRow>& rows, std::size_t first, std::size_t count,
                        MapDenominator den, double& mape_out, double& map_out) {
  std::vector<double> a, p;
  a.reserve(count);
  p.reserve(count);
  for (std::size_t i = first; i < first + count; ++i) {
    a.push_back(rows[i].actual_mw);
    p.push_back(rows[i].predicted_mw);
  }
  mape_out = mape(a, p);
  map_out = map_err(a, p, den);
}

}  // namespace detail

// Forecasts every sample, splits the 48-hour horizon into its two calendar
// days, and reports MAPE/MAP per day and overall.
inline ForecastReport evaluate_model(const Forecaster& model, const LoadDataset& ds,
                                     const std::vector<Sample>& samples,
                                     const NormalizationSpec& norm,
                                     MapDenominator den = MapDenominator::predicted) {
  if (samples.empty()) raise(Errc::empty_input, "no evaluation samples");

  ForecastReport report;
  report.model_name = model.name();
  report.map_denominator = den;

  const auto predictions = model.forecast_mw(ds, samples);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    if (predictions[s].size() != target_width)
      raise(Errc::layout_mismatch, "model emitted " + std::to_string(predictions[s].size()) +
                                       " hours instead of 48");
    for (std::size_t k = 0; k < target_width; ++k) {
      HourRow row;
      row.timestamp = samples[s].target_start + static_cast<std::int64_t>(k);
      row.actual_mw = denormalize(norm, samples[s].target[k]);
      row.predicted_mw = predictions[s][k];
      report.per_hour.push_back(row);
    }
  }

  for (std::size_t block = 0; block + 24 <= report.per_hour.size(); block += 24) {
    DayRow day;
    day.day = report.per_hour[block].timestamp.day();
    day.daytype = day_type(day.day, ds.holidays);
    detail::day_metrics(report.per_hour, block, 24, den, day.mape_pct, day.map_pct);
    report.per_day.push_back(day);
  }

  std::vector<double> a, p;
  a.reserve(report.per_hour.size());
  p.reserve(report.per_hour.size());
  for (const HourRow& r : report.per_hour) {
    a.push_back(r.actual_mw);
    p.push_back(r.predicted_mw);
  }
  report.overall_mape = mape(a, p);
  report.overall_map = map_err(a, p, den);
  return report;
}

// Weekday table: Monday..Friday columns. Weekend table: Saturday, Sunday and
// a holiday column for weekend-typed days that fall on Mon-Fri. Cells pool
// all hours of the matching days; missing cells stay NaN (absent, not zero).
struct ComparisonTable {
  std::vector<std::string> model_names;
  std::vector<std::array<double, 6>> weekday_cells;  // Mon..Fri, overall
  std::vector<std::array<double, 4>> weekend_cells;  // Sat, Sun, holiday, overall
};

inline ComparisonTable compare_models(const std::vector<ForecastReport>& reports) {
  if (reports.size() < 2)
    raise(Errc::empty_input, "need at least two reports to compare");
  for (const ForecastReport& r : reports) {
    if (r.per_hour.size() != reports.front().per_hour.size())
      raise(Errc::mismatched_evaluation_sets, "reports cover different hour counts");
    for (std::size_t i = 0; i < r.per_hour.size(); ++i)
      if (r.per_hour[i].timestamp != reports.front().per_hour[i].timestamp)
        raise(Errc::mismatched_evaluation_sets, "reports cover different hours");
  }

  constexpr double absent = std::numeric_limits<double>::quiet_NaN();
  ComparisonTable table;
  for (const ForecastReport& report : reports) {
    table.model_names.push_back(report.model_name);

    // Buckets 0..4 Mon..Fri, 5 weekday-overall, 6 Sat, 7 Sun, 8 holiday,
    // 9 weekend-overall.
    std::array<std::vector<double>, 10> actual, predicted;
    for (std::size_t d = 0; d < report.per_day.size(); ++d) {
      const DayRow& day = report.per_day[d];
      const int wd = weekday_monday0(day.day);
      int bucket;
      if (day.daytype == DayType::weekday)
        bucket = wd;
      else
        bucket = wd == 5 ? 6 : (wd == 6 ? 7 : 8);
      const int overall = day.daytype == DayType::weekday ? 5 : 9;
      for (std::size_t i = d * 24; i < d * 24 + 24; ++i) {
        actual[bucket].push_back(report.per_hour[i].actual_mw);
        predicted[bucket].push_back(report.per_hour[i].predicted_mw);
        actual[overall].push_back(report.per_hour[i].actual_mw);
        predicted[overall].push_back(report.per_hour[i].predicted_mw);
      }
    }
    std::array<double, 6> week{};
    for (int b = 0; b < 6; ++b)
      week[b] = actual[b].empty() ? absent : mape(actual[b], predicted[b]);
    std::array<double, 4> end{};
    for (int b = 0; b < 4; ++b)
      end[b] = actual[6 + b].empty() ? absent : mape(actual[6 + b], predicted[6 + b]);
    table.weekday_cells.push_back(week);
    table.weekend_cells.push_back(end);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Emission: JSON report, plot CSV, and aligned text tables.

inline std::string report_plot_csv(const ForecastReport& report) {
  std::string out = "timestamp,actual_mw,predicted_mw,model\n";
  char buf[128];
  for (const HourRow& r : report.per_hour) {
    std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%s\n", format_hour(r.timestamp).c_str(),
                  r.actual_mw, r.predicted_mw, report.model_name.c_str());
    out += buf;
  }
  return out;
}

namespace detail {

inline std::string format_cell(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline void append_table(std::string& out, const std::string& title,
                         const std::vector<std::string>& headers,
                         const std::vector<std::string>& names,
                         const std::vector<std::vector<std::string>>& cells) {
  out += title;
  out += '\n';
  std::size_t name_w = 5;
  for (const auto& n : names) name_w = std::max(name_w, n.size());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(name_w + 2), "Model");
  out += buf;
  for (const auto& h : headers) {
    std::snprintf(buf, sizeof buf, "%*s", static_cast<int>(std::max<std::size_t>(h.size(), 9) + 2),
                  h.c_str());
    out += buf;
  }
  out += '\n';
  for (std::size_t r = 0; r < names.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(name_w + 2), names[r].c_str());
    out += buf;
    for (std::size_t c = 0; c < headers.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%*s",
                    static_cast<int>(std::max<std::size_t>(headers[c].size(), 9) + 2),
                    cells[r][c].c_str());
      out += buf;
    }
    out += '\n';
  }
}

}  // namespace detail

inline std::string comparison_to_text(const ComparisonTable& table) {
  std::string out;
  {
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : table.weekday_cells) {
      std::vector<std::string> line;
      for (double v : row) line.push_back(detail::format_cell(v));
      cells.push_back(std::move(line));
    }
    detail::append_table(out, "MAPE (%) of 24 hour forecasts, weekdays",
                         {"Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Overall"},
                         table.model_names, cells);
  }
  out += '\n';
  {
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : table.weekend_cells) {
      std::vector<std::string> line;
      for (double v : row) line.push_back(detail::format_cell(v));
      cells.push_back(std::move(line));
    }
    detail::append_table(out, "MAPE (%) of 24 hour forecasts, weekends and holidays",
                         {"Saturday", "Sunday", "Holiday", "Overall"}, table.model_names, cells);
  }
  return out;
}

}  // namespace loadcast
