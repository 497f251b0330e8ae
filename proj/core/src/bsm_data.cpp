#include "bsmsim/bsm_data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <system_error>

#include "bsmsim/error.hpp"

namespace bsmsim {
namespace {

constexpr std::array<std::string_view, 5> kColumns{"vehicle_id", "timestamp", "latitude",
                                                   "longitude", "speed"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; };
           return lower(x) == lower(y);
         });
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view field, std::string_view column, std::size_t line) {
  double value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw ParseError(line, "non-numeric " + std::string(column) + " '" + std::string(field) + "'");
  }
  return value;
}

std::int64_t parse_int(std::string_view field, std::string_view column, std::size_t line) {
  std::int64_t value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "non-integer " + std::string(column) + " '" + std::string(field) + "'");
  }
  return value;
}

void append_double(std::string& out, double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), ptr);
}

}  // namespace

std::vector<GeoPoint> Frame::positions() const {
  std::vector<GeoPoint> out;
  out.reserve(vehicles.size());
  for (const auto& v : vehicles) out.push_back(v.position());
  return out;
}

const Frame* Dataset::find_frame(std::int64_t timestamp_ms) const noexcept {
  auto it = std::lower_bound(frames.begin(), frames.end(), timestamp_ms,
                             [](const Frame& f, std::int64_t t) { return f.timestamp_ms < t; });
  if (it == frames.end() || it->timestamp_ms != timestamp_ms) return nullptr;
  return &*it;
}

void validate_record(const BsmRecord& record, std::size_t line) {
  if (record.vehicle_id.empty()) throw ParseError(line, "empty vehicle_id");
  if (!(record.latitude >= -90.0 && record.latitude <= 90.0)) {
    throw ParseError(line, "latitude out of range [-90, 90]: " + std::to_string(record.latitude));
  }
  if (!(record.longitude >= -180.0 && record.longitude <= 180.0)) {
    throw ParseError(line,
                     "longitude out of range [-180, 180]: " + std::to_string(record.longitude));
  }
  if (!(record.speed_mps >= 0.0)) {
    throw ParseError(line, "negative speed: " + std::to_string(record.speed_mps));
  }
}

Dataset parse_csv(std::string_view content, std::string source_name) {
  const std::size_t byte_size = content.size();
  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);

  // timestamp -> vehicle_id -> state; later rows overwrite earlier ones.
  std::map<std::int64_t, std::map<std::string, VehicleState, std::less<>>> grouped;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    auto raw = content.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
    ++line_no;

    auto line = trim(raw);
    if (line.empty()) continue;
    auto fields = split_fields(line);

    if (!header_seen) {
      bool ok = fields.size() == kColumns.size();
      for (std::size_t i = 0; ok && i < kColumns.size(); ++i) ok = iequals(fields[i], kColumns[i]);
      if (!ok) {
        throw ParseError(line_no, "expected header '" + std::string(kCsvHeader) + "', got '" +
                                      std::string(line) + "'");
      }
      header_seen = true;
      continue;
    }

    if (fields.size() != kColumns.size()) {
      throw ParseError(line_no, "expected 5 columns, got " + std::to_string(fields.size()));
    }
    BsmRecord record{std::string(fields[0]), parse_int(fields[1], "timestamp", line_no),
                     parse_double(fields[2], "latitude", line_no),
                     parse_double(fields[3], "longitude", line_no),
                     parse_double(fields[4], "speed", line_no)};
    validate_record(record, line_no);

    auto& slot = grouped[record.timestamp_ms];
    VehicleState state{record.vehicle_id, record.latitude, record.longitude, record.speed_mps};
    slot.insert_or_assign(std::move(record.vehicle_id), std::move(state));
  }

  if (grouped.empty()) throw ParseError(0, "no records");

  Dataset dataset;
  dataset.source_name = std::move(source_name);
  dataset.frames.reserve(grouped.size());
  for (auto& [timestamp, vehicles] : grouped) {
    Frame frame{timestamp, {}};
    frame.vehicles.reserve(vehicles.size());
    for (auto& [id, state] : vehicles) frame.vehicles.push_back(std::move(state));
    dataset.record_count += frame.vehicles.size();
    dataset.frames.push_back(std::move(frame));
  }
  if (byte_size > kLargeUploadBytes) {
    dataset.warnings.push_back("file is " + std::to_string(byte_size / 1024) +
                               " KB; uploads above 5000 KB replay slowly");
  }
  return dataset;
}

void append_csv_row(std::string& out, std::string_view vehicle_id, std::int64_t timestamp_ms,
                    double latitude, double longitude, double speed_mps) {
  out.append(vehicle_id);
  out.push_back(',');
  out.append(std::to_string(timestamp_ms));
  out.push_back(',');
  append_double(out, latitude);
  out.push_back(',');
  append_double(out, longitude);
  out.push_back(',');
  append_double(out, speed_mps);
  out.push_back('\n');
}

std::string to_csv(const Dataset& dataset) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const auto& frame : dataset.frames) {
    for (const auto& v : frame.vehicles) {
      append_csv_row(out, v.vehicle_id, frame.timestamp_ms, v.latitude, v.longitude, v.speed_mps);
    }
  }
  return out;
}

}  // namespace bsmsim
