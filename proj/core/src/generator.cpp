#include "bsmsim/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bsmsim/error.hpp"
#include "bsmsim/geodesy.hpp"

namespace bsmsim {
namespace {

constexpr double kMaxSpeedMps = 30.0;
constexpr double kMaxFileKbLimit = 1'000'000.0;

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double quantize(double value, double scale) { return std::round(value * scale) / scale; }

std::string vehicle_id(std::size_t index, std::size_t count) {
  const std::size_t width = std::max<std::size_t>(4, std::to_string(count).size());
  std::string digits = std::to_string(index + 1);
  return "v" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

double rectangle_area_km2(const GeoRectangle& r) noexcept {
  const double height =
      great_circle_distance({r.min_latitude, r.min_longitude}, {r.max_latitude, r.min_longitude});
  const double top =
      great_circle_distance({r.max_latitude, r.min_longitude}, {r.max_latitude, r.max_longitude});
  const double bottom =
      great_circle_distance({r.min_latitude, r.min_longitude}, {r.min_latitude, r.max_longitude});
  return height * (top + bottom) / 2.0 / 1e6;
}

void GeneratorConfig::validate() const {
  if (vehicles_per_frame < 1) throw InputError("vehicles_per_frame must be >= 1");
  const auto& r = rectangle;
  if (!(r.min_latitude < r.max_latitude) || !(r.min_longitude < r.max_longitude)) {
    throw InputError("rectangle bounds must satisfy min < max on both axes");
  }
  if (r.min_latitude < -90.0 || r.max_latitude > 90.0 || r.min_longitude < -180.0 ||
      r.max_longitude > 180.0) {
    throw InputError("rectangle lies outside valid coordinate bounds");
  }
  if (!(max_file_kb > 0.0) || max_file_kb > kMaxFileKbLimit) {
    throw InputError("max_file_kb must be in (0, 1000000]");
  }
  if (frame_interval_ms <= 0) throw InputError("frame_interval_ms must be > 0");
}

GeneratedTrace generate(const GeneratorConfig& config) {
  config.validate();
  const auto& rect = config.rectangle;
  const double cap_bytes = config.max_file_kb * 1024.0;
  const std::size_t n = config.vehicles_per_frame;

  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(vehicle_id(i, n));

  std::mt19937_64 rng(config.seed);
  GeneratedTrace trace;
  trace.csv.assign(kCsvHeader);
  trace.csv.push_back('\n');
  trace.dataset.source_name = "generated-n" + std::to_string(n) + "-seed" + std::to_string(config.seed);

  std::string frame_rows;
  for (std::size_t k = 0; config.max_frames == 0 || k < config.max_frames; ++k) {
    const std::int64_t timestamp = static_cast<std::int64_t>(k) * config.frame_interval_ms;
    Frame frame{timestamp, {}};
    frame.vehicles.reserve(n);
    frame_rows.clear();
    for (std::size_t v = 0; v < n; ++v) {
      double lat = rect.min_latitude + unit_interval(rng) * (rect.max_latitude - rect.min_latitude);
      double lon = rect.min_longitude + unit_interval(rng) * (rect.max_longitude - rect.min_longitude);
      double speed = unit_interval(rng) * kMaxSpeedMps;
      lat = std::clamp(quantize(lat, 1e7), rect.min_latitude, rect.max_latitude);
      lon = std::clamp(quantize(lon, 1e7), rect.min_longitude, rect.max_longitude);
      speed = quantize(speed, 100.0);
      append_csv_row(frame_rows, ids[v], timestamp, lat, lon, speed);
      frame.vehicles.push_back({ids[v], lat, lon, speed});
    }

    if (static_cast<double>(trace.csv.size() + frame_rows.size()) >= cap_bytes) {
      if (k == 0) {
        const auto needed = trace.csv.size() + frame_rows.size();
        throw InputError("a single frame of " + std::to_string(n) + " vehicles needs " +
                         std::to_string(needed) + " bytes; max_file_kb must be at least " +
                         std::to_string(needed / 1024 + 1));
      }
      break;
    }
    trace.csv += frame_rows;
    trace.dataset.record_count += frame.vehicles.size();
    trace.dataset.frames.push_back(std::move(frame));
  }
  return trace;
}

}  // namespace bsmsim
