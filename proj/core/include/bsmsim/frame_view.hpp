#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bsmsim/bsm_data.hpp"
#include "bsmsim/connectivity.hpp"

namespace bsmsim {

struct VehicleView {
  std::string vehicle_id;
  double latitude{};
  double longitude{};
  double speed_mps{};
  std::size_t partition_index{0};
  int color_index{0};
  char character{'A'};
};

/// What the UI draws for one frame at one range.
struct FrameView {
  std::int64_t timestamp_ms{};
  double range_m{kDefaultRangeM};
  std::vector<VehicleView> vehicles;
  std::size_t partition_count{0};
  int squarings{0};
  double distance_ms{0.0};
  double closure_ms{0.0};
};

/// Runs distance -> threshold -> closure -> extraction for one frame.
FrameView compute_frame_view(const Frame& frame, double range_m);

/// Assembles a view from an already computed partitioning.
FrameView make_frame_view(const Frame& frame, double range_m, const ConnectivityMatrix& connectivity,
                          const PartitionSet& partitions);

/// Wire JSON. Timing fields live under "timings".
std::string to_json(const FrameView& view, std::string_view dataset_id = {});

}  // namespace bsmsim
