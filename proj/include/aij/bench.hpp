#ifndef AIJ_BENCH_HPP
#define AIJ_BENCH_HPP

// Timing of repeated calls: min, avg and max wall-clock seconds per input,
// with the clock read just before and just after each call.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "aij/evaluator.hpp"
#include "aij/sexpr.hpp"

namespace aij {

struct BenchRow {
  std::string input;
  double min_s = 0;
  double avg_s = 0;
  double max_s = 0;
  std::string checksum;
  std::string result;  // printed result of the first run
};

struct BenchReport {
  std::string function;
  int runs = 0;
  std::vector<BenchRow> rows;
};

/// FNV-1a (64 bit) of the printed form of `v`, as 16 hex digits.
[[nodiscard]] inline std::string value_checksum(const Value& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : print_value(v)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Calls `function` on each input (one argument each) `runs` times. Every
/// run of an input must return the same value; a mismatch signals `type`.
[[nodiscard]] inline BenchReport run_bench(const Environment& env, const Symbol& function,
                                           const std::vector<std::string>& inputs, int runs) {
  if (runs < 1) fail(ErrorKind::usage, "runs must be at least 1");
  using clock = std::chrono::steady_clock;
  BenchReport report{std::string(function.package().str()) + "::" + std::string(function.name()), runs, {}};
  for (const auto& input : inputs) {
    const Value arg = read_value(input, env);
    std::vector<double> times;
    std::optional<Value> first;
    for (int i = 0; i < runs; ++i) {
      const auto start = clock::now();
      Value result = call_function(env, function, {arg});
      const auto stop = clock::now();
      times.push_back(std::chrono::duration<double>(stop - start).count());
      if (!first) {
        first = std::move(result);
      } else if (!value_equal(*first, result)) {
        fail(ErrorKind::type, "run " + std::to_string(i + 1) + " of input " + input + " returned a different value");
      }
    }
    BenchRow row;
    row.input = input;
    row.min_s = *std::min_element(times.begin(), times.end());
    row.max_s = *std::max_element(times.begin(), times.end());
    double sum = 0;
    for (double t : times) sum += t;
    row.avg_s = std::clamp(sum / runs, row.min_s, row.max_s);
    row.checksum = value_checksum(*first);
    row.result = print_value(*first);
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

/// Aligned table, one row per input.
[[nodiscard]] inline std::string format_table(const BenchReport& report) {
  std::size_t width = 5;
  for (const auto& r : report.rows) width = std::max(width, r.input.size());
  std::string out = report.function + ", " + std::to_string(report.runs) + " runs, seconds\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-*s %10s %10s %10s  %s\n", static_cast<int>(width), "input", "min", "avg", "max",
                "checksum");
  out += line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-*s %10s %10s %10s  %s\n", static_cast<int>(width), r.input.c_str(),
                  format_seconds(r.min_s).c_str(), format_seconds(r.avg_s).c_str(), format_seconds(r.max_s).c_str(),
                  r.checksum.c_str());
    out += line;
  }
  return out;
}

/// input,min_s,avg_s,max_s,checksum
[[nodiscard]] inline std::string format_csv(const BenchReport& report) {
  std::string out = "input,min_s,avg_s,max_s,checksum\n";
  for (const auto& r : report.rows) {
    out += r.input + "," + format_seconds(r.min_s) + "," + format_seconds(r.avg_s) + "," + format_seconds(r.max_s) +
           "," + r.checksum + "\n";
  }
  return out;
}

}  // namespace aij

#endif  // AIJ_BENCH_HPP
