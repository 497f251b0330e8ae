#include "bsmsim/geodesy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace bsmsim {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::uint64_t fill_rows(std::span<const GeoPoint> points, std::vector<double>& entries,
                        std::size_t first_row, std::size_t stride) {
  const std::size_t n = points.size();
  std::uint64_t evaluations = 0;
  for (std::size_t i = first_row; i < n; i += stride) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = great_circle_distance(points[i], points[j]);
      entries[i * n + j] = d;
      entries[j * n + i] = d;
      ++evaluations;
    }
  }
  return evaluations;
}

}  // namespace

double great_circle_distance(GeoPoint p, GeoPoint q) noexcept {
  const double phi1 = p.latitude * kDegToRad;
  const double phi2 = q.latitude * kDegToRad;
  const double sin_dphi = std::sin((phi2 - phi1) / 2.0);
  const double sin_dlambda = std::sin((q.longitude - p.longitude) * kDegToRad / 2.0);
  double h = sin_dphi * sin_dphi + std::cos(phi1) * std::cos(phi2) * sin_dlambda * sin_dlambda;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

DistanceMatrix build_distance_matrix(std::span<const GeoPoint> points, unsigned workers) {
  DistanceMatrix m(points.size());
  const std::size_t n = points.size();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));

  if (workers == 1) {
    m.evaluations_ = fill_rows(points, m.entries_, 0, 1);
    return m;
  }

  // Rows interleaved across workers so the triangular workload is balanced.
  // Each (i, j) cell is written by exactly one worker.
  std::vector<std::uint64_t> counts(workers, 0);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] { counts[w] = fill_rows(points, m.entries_, w, workers); });
    }
  }
  for (auto c : counts) m.evaluations_ += c;
  return m;
}

}  // namespace bsmsim
