#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cglmp/core_model.hpp"

namespace cglmp {

/// One row of a dimension scan.
struct ScanRecord {
  std::int64_t d = 0;
  Side side = Side::Positive;
  double extremal_value = 0.0;
  double f_min = 0.0;
  std::optional<bool> violation_flag;  // absent when the solve failed
  double entropy = 0.0;
  double entropy_ratio = 0.0;
  std::int64_t iterations = 0;
  double residual = 0.0;
  std::int64_t wall_time_ms = 0;
  std::string error;  // empty on success

  bool failed() const noexcept { return !violation_flag.has_value(); }
};

inline constexpr std::string_view kCsvHeader =
    "d,side,extremal_value,f_min,violation_flag,entropy,entropy_ratio,iterations,residual,wall_time_ms";

/// 15 significant digits, scientific notation where shorter.
std::string format_real(double x);

std::string to_csv_row(const ScanRecord& r);
/// Throws InvalidArgument on a malformed row.
ScanRecord parse_csv_row(std::string_view line);
/// Reads a whole file; the first line must be kCsvHeader.
std::vector<ScanRecord> read_csv(std::istream& in);

nlohmann::json to_json(const ScanRecord& r);
ScanRecord record_from_json(const nlohmann::json& j);
std::vector<ScanRecord> read_jsonl(std::istream& in);

}  // namespace cglmp
