#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bsmsim {

/// IAU mean Earth radius, meters.
inline constexpr double kEarthRadiusM = 6'371'008.8;

struct GeoPoint {
  double latitude{};   // degrees
  double longitude{};  // degrees

  bool operator==(const GeoPoint&) const = default;
};

/// Haversine distance in meters on a sphere of radius kEarthRadiusM.
double great_circle_distance(GeoPoint p, GeoPoint q) noexcept;

/// Dense, row-major, symmetric matrix of pairwise distances in meters.
/// Row/column order follows the input order (a frame's ascending vehicle_id order).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * n_, n_};
  }

  /// Number of great_circle_distance calls made to fill the matrix.
  std::uint64_t evaluations() const noexcept { return evaluations_; }

 private:
  friend DistanceMatrix build_distance_matrix(std::span<const GeoPoint>, unsigned);

  std::size_t n_{0};
  std::vector<double> entries_;
  std::uint64_t evaluations_{0};
};

/// Evaluates each unordered pair once (n(n-1)/2 calls) and mirrors it.
/// `workers` > 1 splits rows across threads; results are identical.
DistanceMatrix build_distance_matrix(std::span<const GeoPoint> points, unsigned workers = 1);

}  // namespace bsmsim
