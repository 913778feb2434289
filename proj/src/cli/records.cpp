#include "cglmp/records.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <string>

namespace cglmp {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view s) {
  // strtod handles inf/nan and every format format_real emits.
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size())
    throw InvalidArgument("malformed real '" + buf + "'");
  return v;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string to_csv_row(const ScanRecord& r) {
  std::string s;
  s += std::to_string(r.d);
  s += ',';
  s += to_string(r.side);
  s += ',' + format_real(r.extremal_value);
  s += ',' + format_real(r.f_min);
  s += ',';
  if (r.violation_flag) s += *r.violation_flag ? "true" : "false";
  s += ',' + format_real(r.entropy);
  s += ',' + format_real(r.entropy_ratio);
  s += ',' + std::to_string(r.iterations);
  s += ',' + format_real(r.residual);
  s += ',' + std::to_string(r.wall_time_ms);
  return s;
}

ScanRecord parse_csv_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line, ',');
  if (f.size() != 10) throw InvalidArgument("CSV row must have 10 fields: '" + std::string(line) + "'");
  ScanRecord r;
  r.d = parse_int(f[0]);
  r.side = parse_side(f[1]);
  r.extremal_value = parse_real(f[2]);
  r.f_min = parse_real(f[3]);
  if (f[4] == "true") {
    r.violation_flag = true;
  } else if (f[4] == "false") {
    r.violation_flag = false;
  } else if (f[4].empty()) {
    r.error = "solver failure";
  } else {
    throw InvalidArgument("violation_flag must be true, false or empty");
  }
  r.entropy = parse_real(f[5]);
  r.entropy_ratio = parse_real(f[6]);
  r.iterations = parse_int(f[7]);
  r.residual = parse_real(f[8]);
  r.wall_time_ms = parse_int(f[9]);
  return r;
}

std::vector<ScanRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw InvalidArgument("unexpected CSV header: '" + line + "'");
  std::vector<ScanRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_csv_row(line));
  }
  return out;
}

nlohmann::json to_json(const ScanRecord& r) {
  nlohmann::json j{{"d", r.d},
                   {"side", std::string(to_string(r.side))},
                   {"extremal_value", r.extremal_value},
                   {"f_min", r.f_min},
                   {"entropy", r.entropy},
                   {"entropy_ratio", r.entropy_ratio},
                   {"iterations", r.iterations},
                   {"residual", r.residual},
                   {"wall_time_ms", r.wall_time_ms}};
  if (r.violation_flag) {
    j["violation_flag"] = *r.violation_flag;
  } else {
    j["error"] = r.error;
  }
  return j;
}

ScanRecord record_from_json(const nlohmann::json& j) {
  ScanRecord r;
  r.d = j.at("d").get<std::int64_t>();
  r.side = parse_side(j.at("side").get<std::string>());
  r.extremal_value = j.at("extremal_value").get<double>();
  r.f_min = j.at("f_min").get<double>();
  if (j.contains("violation_flag")) r.violation_flag = j.at("violation_flag").get<bool>();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
  r.entropy = j.at("entropy").get<double>();
  r.entropy_ratio = j.at("entropy_ratio").get<double>();
  r.iterations = j.at("iterations").get<std::int64_t>();
  r.residual = j.at("residual").get<double>();
  r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
  return r;
}

std::vector<ScanRecord> read_jsonl(std::istream& in) {
  std::vector<ScanRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

}  // namespace cglmp
