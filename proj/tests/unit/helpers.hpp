#pragma once

#include <functional>
#include <vector>

#include "loadcast/data.hpp"
#include "loadcast/domain.hpp"

namespace testutil {

// Flat hourly series starting at 00:00 of `start_day`, loads from `load_at`.
inline loadcast::LoadDataset make_dataset(
    std::size_t hours, const std::function<double(std::size_t)>& load_at,
    std::int64_t start_day = loadcast::make_day(1994, 1, 3)) {
  loadcast::LoadDataset ds;
  ds.records.reserve(hours);
  for (std::size_t i = 0; i < hours; ++i) {
    loadcast::HourlyRecord r;
    r.timestamp = loadcast::HourStamp{start_day * 24 + static_cast<std::int64_t>(i)};
    r.load_mw = load_at(i);
    r.temp_c = 5.0 + 0.01 * static_cast<double>(i % 24);
    r.humidity_pct = 60.0;
    r.wind_mps = 3.0;
    r.wind_chill_c = 2.0;
    ds.records.push_back(r);
  }
  return ds;
}

inline loadcast::LoadDataset constant_dataset(std::size_t hours, double load = 700.0,
                                              std::int64_t start_day = loadcast::make_day(1994, 1,
                                                                                          3)) {
  return make_dataset(hours, [load](std::size_t) { return load; }, start_day);
}

}  // namespace testutil
