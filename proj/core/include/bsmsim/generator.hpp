#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "bsmsim/bsm_data.hpp"

namespace bsmsim {

struct GeoRectangle {
  double min_latitude{};
  double max_latitude{};
  double min_longitude{};
  double max_longitude{};

  bool contains(GeoPoint p) const noexcept {
    return p.latitude >= min_latitude && p.latitude <= max_latitude &&
           p.longitude >= min_longitude && p.longitude <= max_longitude;
  }
};

/// Ann Arbor, MI test area used for synthetic traces.
inline constexpr GeoRectangle kAnnArborRectangle{42.226673, 42.356186, -83.816270, -83.522030};

/// Area in km^2: north-south side times the mean of the two east-west sides,
/// all measured with great_circle_distance.
double rectangle_area_km2(const GeoRectangle& rect) noexcept;

struct GeneratorConfig {
  std::size_t vehicles_per_frame{1};
  GeoRectangle rectangle{kAnnArborRectangle};
  std::int64_t frame_interval_ms{100};
  double max_file_kb{5000.0};  // serialized CSV stays strictly below max_file_kb * 1024 bytes
  std::uint64_t seed{0};
  std::size_t max_frames{0};  // 0 = limited only by the file-size cap

  /// Throws InputError on an invalid configuration.
  void validate() const;
};

struct GeneratedTrace {
  Dataset dataset;
  std::string csv;
};

/// Uniform placement inside the rectangle, independent per vehicle per frame.
/// Streams: std::mt19937_64 seeded with `seed`; doubles from the top 53 bits.
/// Coordinates are quantized to 1e-7 degrees and speeds (uniform 0..30 m/s) to 0.01 m/s
/// so the CSV reproduces the dataset exactly.
GeneratedTrace generate(const GeneratorConfig& config);

}  // namespace bsmsim
