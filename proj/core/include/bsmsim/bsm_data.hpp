#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bsmsim/geodesy.hpp"

namespace bsmsim {

/// Uploads above this size are accepted but flagged with a warning.
inline constexpr std::size_t kLargeUploadBytes = 5000 * 1024;

inline constexpr std::string_view kCsvHeader = "vehicle_id,timestamp,latitude,longitude,speed";

/// One abbreviated safety message row.
struct BsmRecord {
  std::string vehicle_id;
  std::int64_t timestamp_ms{};
  double latitude{};
  double longitude{};
  double speed_mps{};

  bool operator==(const BsmRecord&) const = default;
};

struct VehicleState {
  std::string vehicle_id;
  double latitude{};
  double longitude{};
  double speed_mps{};

  GeoPoint position() const noexcept { return {latitude, longitude}; }
  bool operator==(const VehicleState&) const = default;
};

/// All vehicles reporting at one timestamp, unique by id, ascending by id.
struct Frame {
  std::int64_t timestamp_ms{};
  std::vector<VehicleState> vehicles;

  std::vector<GeoPoint> positions() const;
  bool operator==(const Frame&) const = default;
};

struct Dataset {
  std::string dataset_id;
  std::string source_name;
  std::vector<Frame> frames;  // strictly increasing timestamps
  std::size_t record_count{0};
  std::vector<std::string> warnings;

  const Frame* find_frame(std::int64_t timestamp_ms) const noexcept;
};

/// Validates a single record's field invariants; throws ParseError tagged with `line`.
void validate_record(const BsmRecord& record, std::size_t line);

/// Parses header + rows into frames grouped by exact timestamp.
/// Duplicate (vehicle_id, timestamp) rows resolve to the last one in file order.
/// Throws ParseError on malformed input.
Dataset parse_csv(std::string_view content, std::string source_name = {});

/// Serializes frames back to the CSV format accepted by parse_csv.
/// Doubles use the shortest round-trip representation.
std::string to_csv(const Dataset& dataset);

void append_csv_row(std::string& out, std::string_view vehicle_id, std::int64_t timestamp_ms,
                    double latitude, double longitude, double speed_mps);

}  // namespace bsmsim
