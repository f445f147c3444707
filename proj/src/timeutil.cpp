#include "gridres/timeutil.hpp"

#include <cstdio>

#include "gridres/common.hpp"

namespace gridres {

namespace {

// Howard Hinnant's civil-date algorithms; valid far beyond the study window.
int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t yy = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

}  // namespace

int64_t parse_iso_hour(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0;
  char tail = '\0';
  if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d%c", &y, &mo, &d, &h, &mi, &tail) != 6 ||
      tail != 'Z') {
    throw InputError("invalid timestamp '" + text + "' (expected YYYY-MM-DDThh:00Z)");
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi != 0) {
    throw InputError("timestamp out of range: '" + text + "'");
  }
  return days_from_civil(y, mo, d) * 24 + h;
}

std::string format_iso_hour(int64_t hours_since_epoch) {
  int64_t days = hours_since_epoch / 24;
  int hour = static_cast<int>(hours_since_epoch % 24);
  if (hour < 0) {
    hour += 24;
    days -= 1;
  }
  int y = 0, m = 0, d = 0;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00Z", y, m, d, hour);
  return buf;
}

}  // namespace gridres
