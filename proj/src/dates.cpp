#include "dexnet/dates.hpp"

#include <chrono>
#include <cstdio>

#include "dexnet/errors.hpp"

namespace dexnet {

namespace chr = std::chrono;

Day parse_day(std::string_view ymd) {
  int y = 0, m = 0, d = 0;
  char extra = 0;
  std::string s(ymd);
  if (ymd.size() != 10 ||
      std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &extra) != 3)
    throw ArgumentError("not a YYYY-MM-DD date: '" + s + "'");
  chr::year_month_day date{chr::year{y}, chr::month{unsigned(m)}, chr::day{unsigned(d)}};
  if (!date.ok()) throw ArgumentError("invalid calendar date: '" + s + "'");
  return static_cast<Day>(chr::sys_days{date}.time_since_epoch().count());
}

std::string day_str(Day d) {
  chr::year_month_day date{chr::sys_days{chr::days{d}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(date.year()),
                unsigned(date.month()), unsigned(date.day()));
  return buf;
}

Day day_from_unix(std::int64_t seconds) {
  // Floor division keeps pre-1970 timestamps on the right day.
  std::int64_t d = seconds / 86400;
  if (seconds % 86400 < 0) --d;
  return static_cast<Day>(d);
}

std::int64_t day_start_unix(Day d) { return static_cast<std::int64_t>(d) * 86400; }

std::int64_t day_end_unix(Day d) { return day_start_unix(d) + 86399; }

}  // namespace dexnet
