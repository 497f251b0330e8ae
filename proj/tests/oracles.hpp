#pragma once

// Test-only reference implementations. Nothing here calls into the code paths
// it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "bsmsim/bsm_data.hpp"

namespace bsmsim::test {

inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;
inline constexpr long double kRadiusL = 6371008.8L;

// Frozen from a 40-digit mpmath haversine on R = 6 371 008.8 m.
inline constexpr double kCornerLatitudePairM = 14401.208426285548;
inline constexpr double kCornerLongitudePairM = 24177.663215322085;

/// Arc length along a meridian: delta-latitude times radius.
inline long double meridian_arc_m(long double lat1_deg, long double lat2_deg) {
  return std::fabs(lat2_deg - lat1_deg) * kPiL / 180.0L * kRadiusL;
}

/// Haversine in long double via the atan2 form.
inline long double haversine_long_double(long double lat1, long double lon1, long double lat2,
                                         long double lon2) {
  const long double r = kPiL / 180.0L;
  const long double a = std::pow(std::sin((lat2 - lat1) * r / 2), 2) +
                        std::cos(lat1 * r) * std::cos(lat2 * r) *
                            std::pow(std::sin((lon2 - lon1) * r / 2), 2);
  return 2 * kRadiusL * std::atan2(std::sqrt(a), std::sqrt(1 - a));
}

/// Integer matrix product clamped to {0,1}.
inline std::vector<std::vector<int>> clamped_integer_product(const std::vector<std::vector<int>>& a,
                                                             const std::vector<std::vector<int>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long sum = 0;
      for (std::size_t k = 0; k < n; ++k) sum += a[i][k] * b[k][j];
      out[i][j] = sum > 0 ? 1 : 0;
    }
  return out;
}

/// BFS components over an explicit edge predicate; groups ordered by smallest member.
template <typename Linked>
std::vector<std::vector<std::size_t>> bfs_components(std::size_t n, Linked linked) {
  std::vector<int> seen(n, 0);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> group;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      group.push_back(u);
      for (std::size_t v = 0; v < n; ++v) {
        if (!seen[v] && linked(u, v)) {
          seen[v] = 1;
          q.push(v);
        }
      }
    }
    std::sort(group.begin(), group.end());
    groups.push_back(std::move(group));
  }
  return groups;
}

/// Random frame with n vehicles uniformly placed in a lat/lon box.
inline Frame random_frame(std::mt19937_64& rng, std::size_t n, double min_lat, double max_lat,
                          double min_lon, double max_lon) {
  std::uniform_real_distribution<double> lat(min_lat, max_lat), lon(min_lon, max_lon);
  Frame f{0, {}};
  const std::size_t width = std::to_string(n).size();
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    f.vehicles.push_back({"r" + std::string(width - digits.size(), '0') + digits, lat(rng), lon(rng), 0.0});
  }
  return f;
}

}  // namespace bsmsim::test
