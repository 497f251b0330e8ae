#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsmsim/bsm_data.hpp"
#include "bsmsim/connectivity.hpp"

namespace bsmsim {

/// Per-frame, per-repetition measurements. Durations are wall-clock milliseconds
/// from std::chrono::steady_clock.
struct StageTiming {
  std::int64_t timestamp_ms{};
  std::size_t vehicle_count{0};
  int repetition{0};
  double distance_ms{0.0};   // build_distance_matrix
  double closure_ms{0.0};    // compute_closure + extract_partitions
  double oracle_ms{0.0};     // partition_oracle
  double serialize_ms{0.0};  // frame -> wire JSON (stand-in for display cost)
  int squarings{0};
  std::size_t partition_count{0};
  std::uint64_t distance_evaluations{0};
  bool oracle_agrees{true};
};

struct BenchOptions {
  double range_m{kDefaultRangeM};
  int repetitions{1};
  bool parallel{false};  // spread frames across threads; non-timing output unchanged
  unsigned workers{0};   // 0 = hardware concurrency (only used when parallel)
  std::optional<std::filesystem::path> log_dir;
};

/// Warm-up pass (untimed) then `repetitions` measured passes over every frame.
/// Output is ordered by (repetition, frame). Throws InputError for an empty
/// dataset, repetitions < 1 or a non-positive range.
std::vector<StageTiming> run_benchmark(const Dataset& dataset, const BenchOptions& options);

/// Measures a single frame once.
StageTiming measure_frame(const Frame& frame, double range_m);

struct StageAggregate {
  double mean_ms{0.0};
  double min_ms{0.0};
  double max_ms{0.0};
};

struct TrendPoint {
  std::size_t n{0};
  std::size_t samples{0};
  std::map<std::string, StageAggregate> stages;  // distance, closure, oracle, serialize
  double mean_partitions{0.0};
  double mean_squarings{0.0};
};

struct SlopeFit {
  double slope{0.0};  // NaN when fewer than two distinct n with positive times
  std::size_t points{0};
};

struct TrendReport {
  std::vector<TrendPoint> points;       // ascending n
  std::map<std::string, SlopeFit> slopes;  // log-log least squares of mean_ms against n
  std::size_t oracle_disagreements{0};
};

inline const std::vector<std::string> kStageNames{"distance", "closure", "oracle", "serialize"};

TrendReport summarize(std::span<const StageTiming> timings);

/// Least-squares slope of log(y) against log(x). NaN for fewer than two usable points.
SlopeFit fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// For each n, `runs_per_n` independent single-frame traces in the default rectangle.
/// Run r at n uses generator seed splitmix64(seed ^ (n << 32) ^ r).
TrendReport partition_density_sweep(std::span<const std::size_t> n_values, int runs_per_n,
                                    double range_m, std::uint64_t seed);

std::string to_json(const StageTiming& timing);
std::string to_json(const TrendReport& report);

/// Columns: n,stage,mean_ms,min_ms,max_ms,slope_fit
std::string to_summary_csv(const TrendReport& report);

struct BenchLogFiles {
  std::filesystem::path ndjson;
  std::filesystem::path summary_csv;
};

/// Appends bench-<stamp>.ndjson and writes bench-<stamp>-summary.csv under `dir`.
BenchLogFiles write_bench_logs(const std::filesystem::path& dir,
                               std::span<const StageTiming> timings, const TrendReport& report);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace bsmsim
