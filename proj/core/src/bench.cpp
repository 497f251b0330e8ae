#include "bsmsim/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "bsmsim/error.hpp"
#include "bsmsim/frame_view.hpp"
#include "bsmsim/generator.hpp"
#include "timer.hpp"

namespace bsmsim {
namespace {

double stage_value(const StageTiming& t, std::string_view stage) {
  if (stage == "distance") return t.distance_ms;
  if (stage == "closure") return t.closure_ms;
  if (stage == "oracle") return t.oracle_ms;
  return t.serialize_ms;
}

nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

std::string utc_stamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

StageTiming measure_frame(const Frame& frame, double range_m) {
  StageTiming t;
  t.timestamp_ms = frame.timestamp_ms;
  t.vehicle_count = frame.vehicles.size();
  const auto points = frame.positions();

  detail::Stopwatch distance_clock;
  const auto distances = build_distance_matrix(points);
  t.distance_ms = distance_clock.elapsed_ms();
  t.distance_evaluations = distances.evaluations();

  const auto adjacency = threshold(distances, range_m);

  detail::Stopwatch closure_clock;
  const auto connectivity = compute_closure(adjacency);
  const auto partitions = extract_partitions(connectivity, frame);
  t.closure_ms = closure_clock.elapsed_ms();

  detail::Stopwatch oracle_clock;
  const auto oracle = partition_oracle(adjacency);
  t.oracle_ms = oracle_clock.elapsed_ms();

  detail::Stopwatch serialize_clock;
  const auto wire = to_json(make_frame_view(frame, range_m, connectivity, partitions));
  t.serialize_ms = serialize_clock.elapsed_ms();
  (void)wire;

  t.squarings = connectivity.squarings;
  t.partition_count = partitions.size();
  t.oracle_agrees = oracle.groups() == partitions.groups();
  return t;
}

std::vector<StageTiming> run_benchmark(const Dataset& dataset, const BenchOptions& options) {
  if (dataset.frames.empty()) throw InputError("dataset has no frames");
  if (options.repetitions < 1) throw InputError("repetitions must be >= 1");
  if (!std::isfinite(options.range_m) || options.range_m <= 0.0) {
    throw InputError("range_m must be a positive number");
  }

  const auto& frames = dataset.frames;
  const std::size_t reps = static_cast<std::size_t>(options.repetitions);
  std::vector<StageTiming> timings(reps * frames.size());

  unsigned workers = 1;
  if (options.parallel) {
    workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  }

  auto run_jobs = [&](std::size_t job_count, auto&& job) {
    if (workers == 1) {
      for (std::size_t i = 0; i < job_count; ++i) job(i);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < job_count; i = next++) job(i);
      });
    }
  };

  // Warm-up: untimed.
  run_jobs(frames.size(), [&](std::size_t i) { (void)measure_frame(frames[i], options.range_m); });

  run_jobs(timings.size(), [&](std::size_t job) {
    const std::size_t rep = job / frames.size();
    auto t = measure_frame(frames[job % frames.size()], options.range_m);
    t.repetition = static_cast<int>(rep);
    timings[job] = t;
  });

  if (options.log_dir) write_bench_logs(*options.log_dir, timings, summarize(timings));
  return timings;
}

SlopeFit fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (m < 2 || denom <= 0.0) return {std::numeric_limits<double>::quiet_NaN(), m};
  return {(static_cast<double>(m) * sxy - sx * sy) / denom, m};
}

TrendReport summarize(std::span<const StageTiming> timings) {
  std::map<std::size_t, std::vector<const StageTiming*>> by_n;
  TrendReport report;
  for (const auto& t : timings) {
    by_n[t.vehicle_count].push_back(&t);
    if (!t.oracle_agrees) ++report.oracle_disagreements;
  }

  for (const auto& [n, group] : by_n) {
    TrendPoint point;
    point.n = n;
    point.samples = group.size();
    for (const auto& stage : kStageNames) {
      StageAggregate agg{0.0, std::numeric_limits<double>::infinity(), 0.0};
      for (const auto* t : group) {
        const double v = stage_value(*t, stage);
        agg.mean_ms += v;
        agg.min_ms = std::min(agg.min_ms, v);
        agg.max_ms = std::max(agg.max_ms, v);
      }
      agg.mean_ms /= static_cast<double>(group.size());
      point.stages[stage] = agg;
    }
    for (const auto* t : group) {
      point.mean_partitions += static_cast<double>(t->partition_count);
      point.mean_squarings += t->squarings;
    }
    point.mean_partitions /= static_cast<double>(group.size());
    point.mean_squarings /= static_cast<double>(group.size());
    report.points.push_back(std::move(point));
  }

  // n = 1 has no pairwise work, so it is left out of the scaling fits.
  for (const auto& stage : kStageNames) {
    std::vector<double> xs, ys;
    for (const auto& p : report.points) {
      if (p.n < 2) continue;
      xs.push_back(static_cast<double>(p.n));
      ys.push_back(p.stages.at(stage).mean_ms);
    }
    report.slopes[stage] = fit_loglog_slope(xs, ys);
  }
  return report;
}

TrendReport partition_density_sweep(std::span<const std::size_t> n_values, int runs_per_n,
                                    double range_m, std::uint64_t seed) {
  if (n_values.empty()) throw InputError("n_values must not be empty");
  if (runs_per_n < 1) throw InputError("runs_per_n must be >= 1");

  std::vector<StageTiming> timings;
  for (const auto n : n_values) {
    for (int run = 0; run < runs_per_n; ++run) {
      GeneratorConfig config;
      config.vehicles_per_frame = n;
      config.max_frames = 1;
      config.seed = splitmix64(seed ^ (static_cast<std::uint64_t>(n) << 32) ^
                               static_cast<std::uint64_t>(run));
      const auto trace = generate(config);
      auto t = measure_frame(trace.dataset.frames.front(), range_m);
      t.repetition = run;
      timings.push_back(t);
    }
  }
  return summarize(timings);
}

std::string to_json(const StageTiming& t) {
  nlohmann::ordered_json j{{"timestamp", t.timestamp_ms},
                           {"vehicle_count", t.vehicle_count},
                           {"repetition", t.repetition},
                           {"distance_ms", t.distance_ms},
                           {"closure_ms", t.closure_ms},
                           {"oracle_ms", t.oracle_ms},
                           {"serialize_ms", t.serialize_ms},
                           {"squarings", t.squarings},
                           {"partition_count", t.partition_count},
                           {"distance_evaluations", t.distance_evaluations},
                           {"oracle_agrees", t.oracle_agrees}};
  return j.dump();
}

std::string to_json(const TrendReport& report) {
  nlohmann::ordered_json j;
  auto& points = j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : report.points) {
    nlohmann::ordered_json stages;
    for (const auto& [name, agg] : p.stages) {
      stages[name] = {{"mean_ms", agg.mean_ms}, {"min_ms", agg.min_ms}, {"max_ms", agg.max_ms}};
    }
    points.push_back({{"n", p.n},
                      {"samples", p.samples},
                      {"mean_partitions", p.mean_partitions},
                      {"mean_squarings", p.mean_squarings},
                      {"stages", stages}});
  }
  auto& slopes = j["slopes"] = nlohmann::ordered_json::object();
  for (const auto& [name, fit] : report.slopes) {
    slopes[name] = {{"slope", number_or_null(fit.slope)}, {"points", fit.points}};
  }
  j["oracle_disagreements"] = report.oracle_disagreements;
  return j.dump();
}

std::string to_summary_csv(const TrendReport& report) {
  std::string out = "n,stage,mean_ms,min_ms,max_ms,slope_fit\n";
  char buf[256];
  for (const auto& p : report.points) {
    for (const auto& [name, agg] : p.stages) {
      const auto it = report.slopes.find(name);
      const double slope = it == report.slopes.end() ? std::nan("") : it->second.slope;
      std::string slope_text;
      if (std::isfinite(slope)) {
        std::snprintf(buf, sizeof buf, "%.6g", slope);
        slope_text = buf;
      }
      std::snprintf(buf, sizeof buf, "%zu,%s,%.6f,%.6f,%.6f,", p.n, name.c_str(), agg.mean_ms,
                    agg.min_ms, agg.max_ms);
      out += buf;
      out += slope_text;
      out += '\n';
    }
  }
  return out;
}

BenchLogFiles write_bench_logs(const std::filesystem::path& dir,
                               std::span<const StageTiming> timings, const TrendReport& report) {
  std::filesystem::create_directories(dir);
  const auto stamp = utc_stamp();
  BenchLogFiles files{dir / ("bench-" + stamp + ".ndjson"), dir / ("bench-" + stamp + "-summary.csv")};

  std::ofstream ndjson(files.ndjson, std::ios::app);
  for (const auto& t : timings) ndjson << to_json(t) << '\n';
  std::ofstream summary(files.summary_csv, std::ios::trunc);
  summary << to_summary_csv(report);
  if (!ndjson || !summary) throw std::runtime_error("failed to write bench logs under " + dir.string());
  return files;
}

}  // namespace bsmsim
