#pragma once

// Risk priority numbers and ranking for design failure-mode records.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "bpsma/csv.hpp"
#include "bpsma/error.hpp"

namespace bpsma {

struct FailureMode {
  std::string item;
  std::string function;
  std::string cause;
  std::string mode;
  std::string effect;
  int severity = 1;
  int occurrence = 1;
  int detection = 1;

  bool operator==(const FailureMode&) const = default;
};

inline void validate(const FailureMode& fm) {
  auto check = [&](int v, const char* name) {
    if (v < 1 || v > 10) {
      throw DomainError("failure mode '" + fm.item + "': " + name + " must be an integer in [1,10], got " +
                        std::to_string(v));
    }
  };
  check(fm.severity, "severity");
  check(fm.occurrence, "occurrence");
  check(fm.detection, "detection");
}

inline int rpn(const FailureMode& fm) {
  validate(fm);
  return fm.severity * fm.occurrence * fm.detection;
}

struct RankedMode {
  FailureMode mode;
  int rpn;
  std::size_t input_index;
};

/// Descending RPN, then descending severity, then input order.
inline std::vector<RankedMode> rank(const std::vector<FailureMode>& modes) {
  if (modes.empty()) throw DomainError("cannot rank an empty list of failure modes");
  std::vector<RankedMode> out;
  out.reserve(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) out.push_back({modes[i], rpn(modes[i]), i});
  std::stable_sort(out.begin(), out.end(), [](const RankedMode& a, const RankedMode& b) {
    if (a.rpn != b.rpn) return a.rpn > b.rpn;
    return a.mode.severity > b.mode.severity;
  });
  return out;
}

inline constexpr std::string_view kDfmeaHeader = "item,function,cause,mode,effect,severity,occurrence,detection";

inline std::vector<FailureMode> read_failure_modes_csv(std::istream& in, const std::string& source = "<csv>") {
  const auto rows = csv::read_all(in);
  if (rows.empty()) throw ParseError(source + ": empty file, expected header");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
  if (header != kDfmeaHeader) throw ParseError(source + ": unexpected header '" + header + "'");
  std::vector<FailureMode> modes;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto where = source + ":" + std::to_string(r + 1);
    if (row.size() != 8) throw ParseError(where + ": expected 8 columns, got " + std::to_string(row.size()));
    auto score = [&](const std::string& text, const char* name) {
      int v = 0;
      const auto* end = text.data() + text.size();
      const auto [ptr, ec] = std::from_chars(text.data(), end, v);
      if (ec != std::errc{} || ptr != end) {
        throw ParseError(where + ": " + name + " must be an integer, got '" + text + "'");
      }
      return v;
    };
    FailureMode fm{row[0], row[1], row[2], row[3], row[4], score(row[5], "severity"),
                   score(row[6], "occurrence"), score(row[7], "detection")};
    validate(fm);
    modes.push_back(std::move(fm));
  }
  return modes;
}

inline std::vector<FailureMode> read_failure_modes_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_failure_modes_csv(in, path);
}

inline void write_rank_csv(std::ostream& out, const std::vector<RankedMode>& ranked) {
  out << "rank," << kDfmeaHeader << ",rpn\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& m = ranked[i].mode;
    out << i + 1 << ',' << csv::quote(m.item) << ',' << csv::quote(m.function) << ',' << csv::quote(m.cause)
        << ',' << csv::quote(m.mode) << ',' << csv::quote(m.effect) << ',' << m.severity << ',' << m.occurrence
        << ',' << m.detection << ',' << ranked[i].rpn << '\n';
  }
}

/// Aligned plain-text table of rank, item, scores and RPN.
inline void write_rank_table(std::ostream& out, const std::vector<RankedMode>& ranked) {
  std::size_t item_w = 4;
  for (const auto& r : ranked) item_w = std::max(item_w, r.mode.item.size());
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  auto rpad = [](const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
  out << rpad("rank", 4) << "  " << pad("item", item_w) << "  " << rpad("S", 2) << "  " << rpad("O", 2) << "  "
      << rpad("D", 2) << "  " << rpad("RPN", 4) << '\n';
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& r = ranked[i];
    out << rpad(std::to_string(i + 1), 4) << "  " << pad(r.mode.item, item_w) << "  "
        << rpad(std::to_string(r.mode.severity), 2) << "  " << rpad(std::to_string(r.mode.occurrence), 2) << "  "
        << rpad(std::to_string(r.mode.detection), 2) << "  " << rpad(std::to_string(r.rpn), 4) << '\n';
  }
}

}  // namespace bpsma
