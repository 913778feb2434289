#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cglmp/classical_oracle.hpp"
#include "cglmp/cli.hpp"
#include "cglmp/phase_rules.hpp"
#include "cglmp/phase_search.hpp"

namespace cglmp::cli {

namespace {

struct CommonFlags {
  double tol = 1e-10;
  std::int64_t max_iters = 1'000'000;
  std::uint64_t seed = 20080101;
  std::int64_t dense_cap = BuildOptions::kDefaultDenseCap;
  std::int64_t progress_every = 0;

  SolveOptions options() const {
    SolveOptions o;
    o.solver.tolerance = tol;
    o.solver.max_iterations = max_iters;
    o.solver.seed = seed;
    o.build.dense_cap = dense_cap;
    return o;
  }
};

void add_solver_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--tol", f.tol, "Residual tolerance of the eigensolver")
      ->envname("CGLMP_TOL")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "Iteration cap of the eigensolver")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed of the random start vector")->capture_default_str();
  cmd->add_option("--dense-cap", f.dense_cap, "Largest d solved with a dense matrix")
      ->envname("CGLMP_DENSE_CAP")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--progress-every", f.progress_every,
                  "Log (d, iteration, residual) to stderr every N iterations; 0 disables")
      ->check(CLI::NonNegativeNumber);
}

std::vector<Side> sides_of(const std::string& s) {
  if (s == "both") return {Side::Positive, Side::Negative};
  return {parse_side(s)};
}

void print_report(std::ostream& out, const Solution& s) {
  const auto& r = s.record;
  const auto bounds = classical_bounds(Dimension(r.d));
  out << "d                  " << r.d << '\n'
      << "side               " << to_string(r.side) << '\n'
      << "extremal value     " << format_real(r.extremal_value) << '\n'
      << "classical bound    "
      << format_real(r.side == Side::Positive ? bounds.upper : bounds.lower) << '\n'
      << "F_min              " << format_real(r.f_min) << '\n'
      << "violation          " << (r.violation_flag.value_or(false) ? "yes" : "no") << '\n'
      << "entropy (bits)     " << format_real(r.entropy) << '\n'
      << "S/S_max            " << format_real(r.entropy_ratio) << '\n'
      << "iterations         " << r.iterations << '\n'
      << "residual           " << format_real(r.residual) << '\n'
      << "wall time (ms)     " << r.wall_time_ms << '\n';
  const std::size_t shown = std::min<std::size_t>(s.alphas.size(), 16);
  out << "Schmidt coefficients";
  if (shown < s.alphas.size()) out << " (first " << shown << " of " << s.alphas.size() << ")";
  out << '\n';
  for (std::size_t j = 0; j < shown; ++j) out << "  [" << j << "] " << format_real(s.alphas[j]) << '\n';
}

std::function<void(const IterationInfo&)> progress_logger(std::int64_t d, Side side,
                                                          std::ostream& err, std::mutex& mu) {
  return [d, side, &err, &mu](const IterationInfo& info) {
    std::lock_guard lock(mu);
    err << "[progress] d=" << d << " side=" << to_string(side) << " iter=" << info.iteration
        << " residual=" << format_real(info.residual) << '\n';
  };
}

// ---------------------------------------------------------------- report

int cmd_report(const std::string& dspec, const std::string& side, const CommonFlags& flags,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto dims = parse_dimension_grid(dspec);
  std::mutex log_mu;
  nlohmann::json doc = nlohmann::json::array();
  for (auto dv : dims) {
    for (Side s : sides_of(side)) {
      auto opts = flags.options();
      if (flags.progress_every > 0) {
        opts.solver.observer = progress_logger(dv, s, err, log_mu);
        opts.solver.observe_every = flags.progress_every;
      }
      Solution sol;
      try {
        sol = solve(Dimension(dv), s, opts);
      } catch (const NonConvergence& e) {
        err << "error: d=" << dv << " side=" << to_string(s) << ": " << e.what() << '\n';
        return kNonConvergence;
      }
      print_report(out, sol);
      out << '\n';
      auto j = to_json(sol.record);
      j["alphas"] = sol.alphas;
      doc.push_back(std::move(j));
    }
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw InvalidArgument("cannot write '" + out_path + "'");
    f << (doc.size() == 1 ? doc.front() : doc).dump(2) << '\n';
  }
  return kSuccess;
}

// ------------------------------------------------------------------ scan

struct ScanFlags {
  std::string dspec;
  std::string side = "positive";
  std::string format = "csv";
  std::string out_path;
  bool states = false;
  int workers = 1;
  bool resume = false;
};

std::string states_path(const ScanFlags& f) { return f.out_path + ".states." + f.format; }

void write_states(std::ostream& os, const ScanFlags& f, const Solution& s) {
  if (f.format == "csv") {
    for (std::size_t j = 0; j < s.alphas.size(); ++j)
      os << s.record.d << ',' << to_string(s.record.side) << ',' << j << ','
         << format_real(s.alphas[j]) << '\n';
  } else {
    nlohmann::json j{{"d", s.record.d}, {"side", std::string(to_string(s.record.side))},
                     {"alphas", s.alphas}};
    os << j.dump() << '\n';
  }
}

int cmd_scan(const ScanFlags& f, const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  if (f.format != "csv" && f.format != "jsonl") throw InvalidArgument("format must be csv or jsonl");
  if ((f.resume || f.states) && f.out_path.empty())
    throw InvalidArgument("--resume and --states need --out");

  struct Task {
    std::int64_t d;
    Side side;
  };
  std::set<std::pair<std::int64_t, int>> done;
  bool existing = false;
  if (f.resume && std::filesystem::exists(f.out_path)) {
    std::ifstream in(f.out_path);
    const auto prior = f.format == "csv" ? read_csv(in) : read_jsonl(in);
    existing = true;
    for (const auto& r : prior)
      if (!r.failed()) done.insert({r.d, static_cast<int>(r.side)});
  }

  std::vector<Task> tasks;
  for (auto dv : parse_dimension_grid(f.dspec))
    for (Side s : sides_of(f.side))
      if (!done.contains({dv, static_cast<int>(s)})) tasks.push_back({dv, s});

  std::ofstream file;
  std::ofstream states;
  std::ostream* sink = &out;
  if (!f.out_path.empty()) {
    file.open(f.out_path, existing ? std::ios::app : std::ios::trunc);
    if (!file) throw InvalidArgument("cannot write '" + f.out_path + "'");
    sink = &file;
    if (f.states) {
      states.open(states_path(f), existing ? std::ios::app : std::ios::trunc);
      if (!states) throw InvalidArgument("cannot write '" + states_path(f) + "'");
      if (!existing && f.format == "csv") states << "d,side,index,alpha\n";
    }
  }
  if (!existing && f.format == "csv") *sink << kCsvHeader << '\n';
  sink->flush();

  std::mutex mu;
  std::condition_variable ready;
  std::vector<std::optional<Solution>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      auto opts = flags.options();
      if (flags.progress_every > 0) {
        opts.solver.observer = progress_logger(tasks[i].d, tasks[i].side, err, mu);
        opts.solver.observe_every = flags.progress_every;
      }
      Solution s;
      try {
        s = solve_or_record_failure(Dimension(tasks[i].d), tasks[i].side, opts);
      } catch (const std::exception& e) {
        s.record.d = tasks[i].d;
        s.record.side = tasks[i].side;
        s.record.error = e.what();
      }
      std::lock_guard lock(mu);
      slots[i] = std::move(s);
      ready.notify_all();
    }
  };

  const int nworkers = std::max(1, std::min<int>(f.workers, static_cast<int>(tasks.size())));
  std::vector<std::jthread> pool;
  for (int w = 0; w < nworkers; ++w) pool.emplace_back(work);

  int failures = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    Solution s;
    {
      std::unique_lock lock(mu);
      ready.wait(lock, [&] { return slots[i].has_value(); });
      s = std::move(*slots[i]);
      slots[i].reset();
    }
    const auto& r = s.record;
    if (r.failed()) {
      ++failures;
      std::lock_guard lock(mu);
      err << "error: d=" << r.d << " side=" << to_string(r.side) << ": " << r.error << '\n';
    }
    if (f.format == "csv") {
      *sink << to_csv_row(r) << '\n';
    } else {
      *sink << to_json(r).dump() << '\n';
    }
    sink->flush();
    if (states.is_open() && !s.alphas.empty()) {
      write_states(states, f, s);
      states.flush();
    }
    if (!f.out_path.empty()) {
      std::lock_guard lock(mu);
      err << "[scan] d=" << r.d << " side=" << to_string(r.side) << " value="
          << format_real(r.extremal_value) << " iterations=" << r.iterations
          << " residual=" << format_real(r.residual) << '\n';
    }
  }
  return failures > 0 ? kNonConvergence : kSuccess;
}

// ---------------------------------------------------------------- verify

struct VerifyTally {
  int passed = 0;
  int failed = 0;
  void line(std::ostream& out, bool ok, const std::string& check, const std::string& detail) {
    (ok ? passed : failed)++;
    out << (ok ? "PASS " : "FAIL ") << check << ' ' << detail << '\n';
  }
};

void verify_bounds(std::int64_t d_max, VerifyTally& t, std::ostream& out) {
  for (std::int64_t dv = 2; dv <= d_max; ++dv) {
    const Dimension d(dv);
    const auto ex = classical_extremes(d);
    const auto b = classical_bounds(d);
    const bool ok = ex.min == b.lower && ex.max == b.upper;
    t.line(out, ok, "bounds",
           "d=" + std::to_string(dv) + " enumerated=[" + format_real(ex.min) + ", " +
               format_real(ex.max) + "] expected=[" + format_real(b.lower) + ", " +
               format_real(b.upper) + "]");
  }
}

void verify_paths(std::int64_t d_max, std::uint64_t seed, VerifyTally& t, std::ostream& out) {
  constexpr double kTol = 1e-9;
  constexpr int kSamples = 20;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::int64_t dv = 2; dv <= d_max; ++dv) {
    const Dimension d(dv);
    double worst = 0.0;
    for (int k = 0; k < kSamples + 2; ++k) {
      std::vector<double> raw(d.size());
      for (double& x : raw) x = normal(rng);
      const auto state = SchmidtState::normalized(raw);
      PhaseSettings p = PhaseSettings::zeros(d);
      if (k < kSamples) {
        for (auto* v : {&p.phi1, &p.phi2, &p.vphi1, &p.vphi2})
          for (double& x : *v) x = angle(rng);
      } else {
        p = phases_from_rule(rule_for(k == kSamples ? Side::Positive : Side::Negative, d));
      }
      const double prob = bell_value_from_probabilities(state, p);
      const double closed = bell_value_closed_form(state, p);
      const double quad = quadratic_form(build(p), state);
      worst = std::max({worst, std::abs(prob - closed), std::abs(closed - quad)});
    }
    t.line(out, worst < kTol, "paths",
           "d=" + std::to_string(dv) + " max_deviation=" + format_real(worst));
  }
}

void verify_rules(std::int64_t d_max, std::uint64_t seed, const SolveOptions& opts,
                  VerifyTally& t, std::ostream& out) {
  constexpr double kTol = 1e-6;
  for (std::int64_t dv = 2; dv <= d_max; ++dv) {
    for (Side s : {Side::Positive, Side::Negative}) {
      const Dimension d(dv);
      const double rule = solve(d, s, opts).record.extremal_value;
      SearchProblem problem;
      problem.d = d;
      problem.side = s;
      problem.restarts = 20;
      problem.seed = seed;
      const auto found = search(problem).best_value;
      const double excess = s == Side::Positive ? found - rule : rule - found;
      t.line(out, excess <= kTol, "rules",
             "d=" + std::to_string(dv) + " side=" + std::string(to_string(s)) +
                 " rule=" + format_real(rule) + " search=" + format_real(found));
    }
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal quantum violations of the CGLMP inequality on both sides"};
  app.name("cglmp");
  app.require_subcommand(1);

  CommonFlags common;
  std::string dspec;
  std::string side = "positive";
  std::string out_path;

  auto* report = app.add_subcommand("report", "Solve one or more dimensions and print a report");
  report->add_option("--d", dspec, "Dimension or dimension grid")->required();
  report->add_option("--side", side, "positive | negative | both")
      ->check(CLI::IsMember({"positive", "negative", "both"}));
  report->add_option("--out", out_path, "Also write the result(s) as JSON");
  add_solver_flags(report, common);

  ScanFlags scan;
  auto* scan_cmd = app.add_subcommand("scan", "Sweep dimensions and emit one record per (d, side)");
  scan_cmd->add_option("--d", scan.dspec, "Grid: 2:10, 2,3,5, 2:1e6:geometric:40")->required();
  scan_cmd->add_option("--side", scan.side, "positive | negative | both")
      ->check(CLI::IsMember({"positive", "negative", "both"}));
  scan_cmd->add_option("--format", scan.format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  scan_cmd->add_option("--out", scan.out_path, "Output file (default: stdout)");
  scan_cmd->add_flag("--states", scan.states, "Write Schmidt coefficients to <out>.states.<format>");
  scan_cmd->add_option("--workers", scan.workers, "Concurrent solves")
      ->envname("CGLMP_WORKERS")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_flag("--resume", scan.resume, "Skip (d, side) pairs already in --out and append");
  add_solver_flags(scan_cmd, common);

  bool v_bounds = false;
  bool v_paths = false;
  bool v_rules = false;
  std::int64_t d_max = 8;
  auto* verify = app.add_subcommand("verify", "Cross-check bounds, evaluation paths and phase rules");
  verify->add_flag("--bounds", v_bounds, "Brute-force classical bounds");
  verify->add_flag("--paths", v_paths, "Probability path vs closed form vs quadratic form");
  verify->add_flag("--rules", v_rules, "Phase search does not beat the phase rules");
  verify->add_option("--d-max", d_max, "Largest dimension checked")->check(CLI::Range(2, 20));
  add_solver_flags(verify, common);

  std::int64_t dump_d = 0;
  auto* dump = app.add_subcommand("dump-matrix", "Print the Bell matrix as a CSV grid (d <= 64)");
  dump->add_option("--d", dump_d, "Dimension")->required()->check(CLI::Range(2, 64));
  dump->add_option("--side", side, "positive | negative")
      ->check(CLI::IsMember({"positive", "negative"}));
  dump->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*report) return cmd_report(dspec, side, common, out_path, out, err);
    if (*scan_cmd) return cmd_scan(scan, common, out, err);
    if (*verify) {
      if (!v_bounds && !v_paths && !v_rules) v_bounds = v_paths = v_rules = true;
      if (v_rules && d_max > 9) throw InvalidArgument("--rules supports --d-max <= 9");
      VerifyTally tally;
      if (v_bounds) verify_bounds(d_max, tally, out);
      if (v_paths) verify_paths(d_max, common.seed, tally, out);
      if (v_rules) verify_rules(d_max, common.seed, common.options(), tally, out);
      out << "summary passed=" << tally.passed << " failed=" << tally.failed << '\n';
      return tally.failed == 0 ? kSuccess : kVerificationFailure;
    }
    if (*dump) {
      const auto b = build(rule_for(parse_side(side), Dimension(dump_d)));
      if (out_path.empty()) {
        write_grid_csv(b, out);
      } else {
        std::ofstream f(out_path);
        if (!f) throw InvalidArgument("cannot write '" + out_path + "'");
        write_grid_csv(b, f);
      }
      return kSuccess;
    }
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace cglmp::cli
