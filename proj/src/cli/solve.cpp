#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "cglmp/cli.hpp"
#include "cglmp/phase_rules.hpp"

namespace cglmp::cli {

namespace {

void fill_from_eigen(ScanRecord& rec, std::vector<double>& alphas, Dimension d, Side side,
                     const EigenResult& eig, double margin) {
  rec.extremal_value = eig.eigenvalue;
  rec.iterations = eig.iterations;
  rec.residual = eig.residual;
  const auto th = side == Side::Positive ? noise_threshold_positive(eig.eigenvalue, margin)
                                         : noise_threshold_negative(eig.eigenvalue, d, margin);
  rec.f_min = th.f_min;
  rec.violation_flag = th.violation;
  const auto state = SchmidtState::normalized(eig.eigenvector).canonical();
  const auto ent = entropy_ratio(state);
  rec.entropy = ent.bits;
  rec.entropy_ratio = ent.ratio;
  alphas.assign(state.alphas().begin(), state.alphas().end());
}

}  // namespace

Solution solve(Dimension d, Side side, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const BellMatrix b = build(rule_for(side, d), options.build);
  const EigenResult eig = extremal_eigen(b, side, options.solver);
  Solution s;
  s.record.d = d.value();
  s.record.side = side;
  fill_from_eigen(s.record, s.alphas, d, side, eig, options.solver.tolerance);
  s.record.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  return s;
}

Solution solve_or_record_failure(Dimension d, Side side, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  try {
    return solve(d, side, options);
  } catch (const NonConvergence& e) {
    Solution s;
    s.record.d = d.value();
    s.record.side = side;
    if (!e.best().eigenvector.empty()) {
      fill_from_eigen(s.record, s.alphas, d, side, e.best(), options.solver.tolerance);
    }
    s.record.violation_flag.reset();
    s.record.iterations = options.solver.max_iterations;
    s.record.error = e.what();
    s.record.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
    return s;
  }
}

namespace {

std::int64_t parse_dim_value(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v) || v != std::floor(v) || v > 1e12)
    throw InvalidArgument("bad dimension value '" + s + "'");
  return static_cast<std::int64_t>(v);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t pos; (pos = s.find(sep, start)) != std::string_view::npos; start = pos + 1)
    out.push_back(s.substr(start, pos - start));
  out.push_back(s.substr(start));
  return out;
}

}  // namespace

std::vector<std::int64_t> parse_dimension_grid(std::string_view spec) {
  std::vector<std::int64_t> out;
  for (auto item : split(spec, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_dim_value(parts[0]));
    } else if (parts.size() == 2 || parts.size() == 3) {
      const auto lo = parse_dim_value(parts[0]);
      const auto hi = parse_dim_value(parts[1]);
      const auto step = parts.size() == 3 ? parse_dim_value(parts[2]) : 1;
      if (hi < lo || step < 1) throw InvalidArgument("bad range '" + std::string(item) + "'");
      for (auto d = lo; d <= hi; d += step) out.push_back(d);
    } else if (parts.size() == 4 && parts[2] == "geometric") {
      const auto lo = parse_dim_value(parts[0]);
      const auto hi = parse_dim_value(parts[1]);
      const auto count = parse_dim_value(parts[3]);
      if (hi < lo || count < 1 || lo < 1) throw InvalidArgument("bad geometric grid '" + std::string(item) + "'");
      if (count == 1) {
        out.push_back(lo);
      } else {
        const double ratio = std::log(static_cast<double>(hi) / static_cast<double>(lo));
        for (std::int64_t k = 0; k < count; ++k) {
          const double v = static_cast<double>(lo) *
                           std::exp(ratio * static_cast<double>(k) / static_cast<double>(count - 1));
          out.push_back(std::clamp(static_cast<std::int64_t>(std::llround(v)), lo, hi));
        }
      }
    } else {
      throw InvalidArgument("cannot parse dimension spec '" + std::string(item) + "'");
    }
  }
  if (out.empty()) throw InvalidArgument("empty dimension spec");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.front() < 2) throw InvalidDimension("dimensions must be >= 2");
  return out;
}

}  // namespace cglmp::cli
