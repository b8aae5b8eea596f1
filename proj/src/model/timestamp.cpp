#include "nanopub/timestamp.hpp"

#include <chrono>
#include <cstdio>

namespace nanopub {

namespace {

bool digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

}  // namespace

std::optional<Timestamp> parse_datetime(std::string_view s) {
  using namespace std::chrono;
  int y, mo, d;
  if (!digits(s, 0, 4, y) || s.size() < 10 || s[4] != '-' || !digits(s, 5, 2, mo) ||
      s[7] != '-' || !digits(s, 8, 2, d)) {
    return std::nullopt;
  }
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;

  std::int64_t micros = 0;
  std::size_t pos = 10;
  if (pos < s.size() && s[pos] == 'T') {
    int h, mi, sec;
    if (!digits(s, 11, 2, h) || s.size() < 19 || s[13] != ':' || !digits(s, 14, 2, mi) ||
        s[16] != ':' || !digits(s, 17, 2, sec) || h > 24 || mi > 59 || sec > 60) {
      return std::nullopt;
    }
    micros = (static_cast<std::int64_t>(h) * 3600 + mi * 60 + sec) * 1'000'000;
    pos = 19;
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      std::int64_t scale = 100'000;
      std::size_t start = pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        micros += (s[pos] - '0') * scale;
        scale /= 10;
        ++pos;
      }
      if (pos == start) return std::nullopt;
    }
  }
  if (pos < s.size()) {
    if (s[pos] == 'Z' && pos + 1 == s.size()) {
      ++pos;
    } else if ((s[pos] == '+' || s[pos] == '-') && pos + 6 == s.size() && s[pos + 3] == ':') {
      int oh, om;
      if (!digits(s, pos + 1, 2, oh) || !digits(s, pos + 4, 2, om)) return std::nullopt;
      std::int64_t offset = (static_cast<std::int64_t>(oh) * 3600 + om * 60) * 1'000'000;
      micros += s[pos] == '+' ? -offset : offset;
      pos = s.size();
    } else {
      return std::nullopt;
    }
  }
  auto days = sys_days(ymd).time_since_epoch().count();
  return Timestamp{static_cast<std::int64_t>(days) * 86'400'000'000LL + micros};
}

std::string format_date(Timestamp t) {
  using namespace std::chrono;
  std::int64_t day_count = t.micros / 86'400'000'000LL;
  if (t.micros < 0 && t.micros % 86'400'000'000LL != 0) --day_count;
  year_month_day ymd{sys_days{days{day_count}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_datetime(Timestamp t) {
  constexpr std::int64_t kDay = 86'400'000'000LL;
  std::int64_t day_start = t.micros - ((t.micros % kDay) + kDay) % kDay;
  std::int64_t secs = (t.micros - day_start) / 1'000'000;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", format_date(t).c_str(),
                static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60),
                static_cast<int>(secs % 60));
  return buf;
}

}  // namespace nanopub
