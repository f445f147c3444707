#pragma once

#include <cstdint>
#include <string>

namespace gridres {

// Timestamps are UTC at hour resolution, stored as hours since 1970-01-01T00:00Z.
// Text form is "YYYY-MM-DDThh:00Z".
int64_t parse_iso_hour(const std::string& text);
std::string format_iso_hour(int64_t hours_since_epoch);

}  // namespace gridres
