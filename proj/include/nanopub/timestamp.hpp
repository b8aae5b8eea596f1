#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nanopub {

/// Microseconds since the Unix epoch, UTC.
struct Timestamp {
  std::int64_t micros = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

/// Parses xsd:dateTime (`YYYY-MM-DDThh:mm:ss[.fff][Z|+hh:mm]`) or xsd:date.
/// Values without a zone are read as UTC.
std::optional<Timestamp> parse_datetime(std::string_view text);

/// `YYYY-MM-DD` of a UTC timestamp.
std::string format_date(Timestamp t);

/// `YYYY-MM-DDThh:mm:ssZ`, truncated to whole seconds.
std::string format_datetime(Timestamp t);

}  // namespace nanopub
