#pragma once

// Piecewise-constant voltage schedules and the "<V>V@<s>s,..." mini-language.

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "bpsma/error.hpp"

namespace bpsma {

struct DriveSegment {
  double duration;  // s
  double voltage;   // V

  bool operator==(const DriveSegment&) const = default;
};

struct DriveProfile {
  std::vector<DriveSegment> segments;

  double total_duration() const {
    double total = 0.0;
    for (const auto& s : segments) total += s.duration;
    return total;
  }

  /// Voltage on [start, start + duration) of each segment; 0 once the schedule has ended.
  double voltage_at(double t) const {
    double start = 0.0;
    for (const auto& s : segments) {
      if (t < start + s.duration) return s.voltage;
      start += s.duration;
    }
    return 0.0;
  }

  bool operator==(const DriveProfile&) const = default;
};

inline void validate(const DriveProfile& drive) {
  if (drive.segments.empty()) throw ConfigError("drive: at least one segment is required");
  for (std::size_t i = 0; i < drive.segments.size(); ++i) {
    const auto& s = drive.segments[i];
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
      throw ConfigError("drive: segment " + std::to_string(i) + " duration must be > 0");
    }
    if (!(s.voltage >= 0.0) || !std::isfinite(s.voltage)) {
      throw ConfigError("drive: segment " + std::to_string(i) + " voltage must be >= 0");
    }
  }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_number(std::string_view text, std::string_view context) {
  text = trim(text);
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ParseError(std::string(context) + ": invalid number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses "15V@10s,0V@15s". Whitespace around tokens is ignored.
inline DriveProfile parse_drive(std::string_view text) {
  DriveProfile drive;
  while (true) {
    const auto comma = text.find(',');
    const auto token = detail::trim(text.substr(0, comma));
    const auto at = token.find('@');
    if (at == std::string_view::npos) {
      throw ParseError("drive: segment '" + std::string(token) + "' must look like <V>V@<s>s");
    }
    auto volts = detail::trim(token.substr(0, at));
    auto secs = detail::trim(token.substr(at + 1));
    if (volts.empty() || (volts.back() != 'V' && volts.back() != 'v')) {
      throw ParseError("drive: voltage in '" + std::string(token) + "' needs a V suffix");
    }
    if (secs.empty() || (secs.back() != 's' && secs.back() != 'S')) {
      throw ParseError("drive: duration in '" + std::string(token) + "' needs an s suffix");
    }
    volts.remove_suffix(1);
    secs.remove_suffix(1);
    drive.segments.push_back({detail::parse_number(secs, "drive duration"),
                              detail::parse_number(volts, "drive voltage")});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  validate(drive);
  return drive;
}

inline std::string format_drive(const DriveProfile& drive) {
  std::string out;
  for (const auto& s : drive.segments) {
    if (!out.empty()) out += ',';
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, s.voltage);
    out.append(buf, r.ptr);
    out += "V@";
    r = std::to_chars(buf, buf + sizeof buf, s.duration);
    out.append(buf, r.ptr);
    out += 's';
  }
  return out;
}

}  // namespace bpsma
