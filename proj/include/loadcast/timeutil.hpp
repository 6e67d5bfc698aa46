#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

namespace loadcast {

// Naive local time at whole-hour resolution: hours since 1970-01-01T00:00.
// No timezone or daylight-saving arithmetic anywhere in the toolkit.
struct HourStamp {
  std::int64_t hours = 0;

  friend auto operator<=>(const HourStamp&, const HourStamp&) = default;

  HourStamp operator+(std::int64_t dh) const { return HourStamp{hours + dh}; }
  HourStamp operator-(std::int64_t dh) const { return HourStamp{hours - dh}; }
  std::int64_t operator-(HourStamp other) const { return hours - other.hours; }

  // Days since epoch of the calendar day containing this hour.
  std::int64_t day() const {
    return hours >= 0 ? hours / 24 : (hours - 23) / 24;
  }
  int hour_of_day() const { return static_cast<int>(hours - day() * 24); }
};

inline std::int64_t make_day(int year, unsigned month, unsigned dom) {
  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                        std::chrono::day{dom}};
  return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

inline HourStamp make_hour(int year, unsigned month, unsigned dom, int hour) {
  return HourStamp{make_day(year, month, dom) * 24 + hour};
}

struct CivilDate {
  int year;
  unsigned month;
  unsigned dom;
};

inline CivilDate civil_from_day(std::int64_t day) {
  const std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{day}}};
  return CivilDate{static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                   static_cast<unsigned>(ymd.day())};
}

// Monday = 0 ... Sunday = 6.
inline int weekday_monday0(std::int64_t day) {
  const std::chrono::weekday wd{std::chrono::sys_days{std::chrono::days{day}}};
  return static_cast<int>(wd.iso_encoding()) - 1;
}

inline int day_of_year(std::int64_t day) {
  const CivilDate cd = civil_from_day(day);
  return static_cast<int>(day - make_day(cd.year, 1, 1));
}

inline std::string format_date(std::int64_t day) {
  const CivilDate cd = civil_from_day(day);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", cd.year, cd.month, cd.dom);
  return buf;
}

// ISO 8601 local hour, e.g. 1994-01-03T07:00.
inline std::string format_hour(HourStamp t) {
  char buf[24];
  const CivilDate cd = civil_from_day(t.day());
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:00", cd.year, cd.month, cd.dom,
                t.hour_of_day());
  return buf;
}

inline std::optional<std::int64_t> parse_date(const std::string& text) {
  int y = 0;
  unsigned m = 0, d = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &extra) != 3) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

inline std::optional<HourStamp> parse_hour(const std::string& text) {
  int y = 0, h = 0, min = 0;
  unsigned m = 0, d = 0;
  char extra = 0;
  const int n = std::sscanf(text.c_str(), "%d-%u-%uT%d:%d%c", &y, &m, &d, &h, &min, &extra);
  if (n != 5 || min != 0 || h < 0 || h > 23) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return HourStamp{std::chrono::sys_days{ymd}.time_since_epoch().count() * 24 + h};
}

}  // namespace loadcast
