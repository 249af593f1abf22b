#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace dexnet {

// UTC calendar day as a count of days since 1970-01-01.
using Day = std::int32_t;

Day parse_day(std::string_view ymd);  // "YYYY-MM-DD", throws ArgumentError
std::string day_str(Day d);

Day day_from_unix(std::int64_t seconds);
std::int64_t day_start_unix(Day d);
std::int64_t day_end_unix(Day d);  // last second of the day

}  // namespace dexnet
