// bsmsim: ingest, generate, partition, bench, sweep and serve BSM traces.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsmsim/bench.hpp"
#include "bsmsim/error.hpp"
#include "bsmsim/frame_view.hpp"
#include "bsmsim/generator.hpp"
#include "service/service.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bsmsim::InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bsmsim::Dataset load_dataset(const std::string& path) {
  return bsmsim::parse_csv(read_file(path), std::filesystem::path(path).filename().string());
}

void require_positive_range(double range_m) {
  if (!(range_m > 0.0)) throw bsmsim::InputError("--range must be > 0");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replay BSM traces and compute multi-hop DSRC connectivity partitions"};
  app.require_subcommand(1);

  // ingest
  std::string ingest_path;
  auto* ingest = app.add_subcommand("ingest", "Validate a CSV trace and print its summary");
  ingest->add_option("csv", ingest_path, "Input CSV")->required();

  // generate
  bsmsim::GeneratorConfig gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a synthetic trace in the test rectangle");
  generate->add_option("--n", gen.vehicles_per_frame, "Vehicles per frame")->required();
  generate->add_option("--seed", gen.seed, "PRNG seed");
  generate->add_option("--out", gen_out, "Output file (default: stdout)");
  generate->add_option("--interval", gen.frame_interval_ms, "Frame interval in ms");
  generate->add_option("--max-kb", gen.max_file_kb, "File size cap in KB");
  generate->add_option("--frames", gen.max_frames, "Maximum frame count (0 = cap only)");

  // partition
  std::string part_path;
  std::int64_t part_ts = 0;
  double part_range = bsmsim::kDefaultRangeM;
  auto* partition = app.add_subcommand("partition", "Print the FrameView JSON for one timestamp");
  partition->add_option("csv", part_path, "Input CSV")->required();
  partition->add_option("--timestamp", part_ts, "Frame timestamp (ms)")->required();
  partition->add_option("--range", part_range, "DSRC range in meters");

  // bench
  std::string bench_path;
  bsmsim::BenchOptions bench_opts;
  std::string bench_log_dir = ".";
  auto* bench = app.add_subcommand("bench", "Time every pipeline stage over a trace");
  bench->add_option("csv", bench_path, "Input CSV")->required();
  bench->add_option("--range", bench_opts.range_m, "DSRC range in meters");
  bench->add_option("--reps", bench_opts.repetitions, "Measured repetitions");
  bench->add_option("--log-dir", bench_log_dir, "Directory for bench-*.ndjson / -summary.csv");
  bench->add_flag("--parallel", bench_opts.parallel, "Process frames on multiple threads");

  // sweep
  std::vector<std::size_t> sweep_n{1, 10, 25, 50, 75, 100, 150, 200};
  int sweep_runs = 30;
  double sweep_range = bsmsim::kDefaultRangeM;
  std::uint64_t sweep_seed = 1;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo mean partition count per vehicle count");
  sweep->add_option("--n-list", sweep_n, "Vehicle counts")->delimiter(',');
  sweep->add_option("--runs", sweep_runs, "Runs per vehicle count");
  sweep->add_option("--range", sweep_range, "DSRC range in meters");
  sweep->add_option("--seed", sweep_seed, "Base seed");

  // serve
  bsmsim::service::ServiceConfig serve_cfg;
  std::string data_dir, web_root;
  auto* serve = app.add_subcommand("serve", "Run the HTTP/JSON service");
  serve->add_option("--port", serve_cfg.port, "Port (0 = ephemeral)")->envname("PORT");
  serve->add_option("--host", serve_cfg.host, "Bind address");
  serve->add_option("--data-dir", data_dir, "Persist uploads here")->envname("DATA_DIR");
  serve->add_option("--web-root", web_root, "Static UI bundle directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  try {
    if (*ingest) {
      const auto csv = read_file(ingest_path);
      auto dataset = bsmsim::parse_csv(csv, std::filesystem::path(ingest_path).filename().string());
      nlohmann::ordered_json j{{"source_name", dataset.source_name},
                               {"frame_count", dataset.frames.size()},
                               {"record_count", dataset.record_count},
                               {"bytes", csv.size()},
                               {"warnings", dataset.warnings}};
      if (!dataset.frames.empty()) {
        j["first_timestamp"] = dataset.frames.front().timestamp_ms;
        j["last_timestamp"] = dataset.frames.back().timestamp_ms;
      }
      std::cout << j.dump(2) << '\n';
    } else if (*generate) {
      const auto trace = bsmsim::generate(gen);
      if (gen_out.empty()) {
        std::cout << trace.csv;
      } else {
        std::ofstream out(gen_out, std::ios::binary | std::ios::trunc);
        out << trace.csv;
        if (!out) throw std::runtime_error("failed to write " + gen_out);
        std::cerr << "wrote " << trace.dataset.frames.size() << " frames ("
                  << trace.dataset.record_count << " records, " << trace.csv.size() << " bytes) to "
                  << gen_out << '\n';
      }
    } else if (*partition) {
      require_positive_range(part_range);
      const auto dataset = load_dataset(part_path);
      const auto* frame = dataset.find_frame(part_ts);
      if (!frame) throw bsmsim::InputError("no frame at timestamp " + std::to_string(part_ts));
      std::cout << bsmsim::to_json(bsmsim::compute_frame_view(*frame, part_range)) << '\n';
    } else if (*bench) {
      require_positive_range(bench_opts.range_m);
      const auto dataset = load_dataset(bench_path);
      const auto timings = bsmsim::run_benchmark(dataset, bench_opts);
      const auto report = bsmsim::summarize(timings);
      const auto files = bsmsim::write_bench_logs(bench_log_dir, timings, report);
      std::cerr << "logs: " << files.ndjson.string() << ", " << files.summary_csv.string() << '\n';
      std::cout << bsmsim::to_json(report) << '\n';
    } else if (*sweep) {
      require_positive_range(sweep_range);
      const auto report = bsmsim::partition_density_sweep(sweep_n, sweep_runs, sweep_range, sweep_seed);
      std::cout << bsmsim::to_json(report) << '\n';
    } else if (*serve) {
      if (!data_dir.empty()) serve_cfg.data_dir = data_dir;
      if (!web_root.empty()) serve_cfg.web_root = web_root;
      bsmsim::service::Service service(serve_cfg);
      const int port = service.bind();
      std::cout << "listening on http://" << serve_cfg.host << ':' << port << std::endl;
      service.run();
    }
  } catch (const bsmsim::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
