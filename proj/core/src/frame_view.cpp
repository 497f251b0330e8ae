#include "bsmsim/frame_view.hpp"

#include <json.hpp>

#include "timer.hpp"

namespace bsmsim {

FrameView make_frame_view(const Frame& frame, double range_m, const ConnectivityMatrix& connectivity,
                          const PartitionSet& partitions) {
  FrameView view;
  view.timestamp_ms = frame.timestamp_ms;
  view.range_m = range_m;
  view.partition_count = partitions.size();
  view.squarings = connectivity.squarings;
  view.vehicles.reserve(frame.vehicles.size());
  for (std::size_t i = 0; i < frame.vehicles.size(); ++i) {
    const auto& v = frame.vehicles[i];
    const auto rank = partitions.partition_of[i];
    const auto label = partitions.partitions[rank].label;
    view.vehicles.push_back(
        {v.vehicle_id, v.latitude, v.longitude, v.speed_mps, rank, label.color_index, label.character});
  }
  return view;
}

FrameView compute_frame_view(const Frame& frame, double range_m) {
  detail::Stopwatch distance_clock;
  const auto distances = build_distance_matrix(frame.positions());
  const double distance_ms = distance_clock.elapsed_ms();

  const auto adjacency = threshold(distances, range_m);

  detail::Stopwatch closure_clock;
  const auto connectivity = compute_closure(adjacency);
  const auto partitions = extract_partitions(connectivity, frame);
  const double closure_ms = closure_clock.elapsed_ms();

  auto view = make_frame_view(frame, range_m, connectivity, partitions);
  view.distance_ms = distance_ms;
  view.closure_ms = closure_ms;
  return view;
}

std::string to_json(const FrameView& view, std::string_view dataset_id) {
  nlohmann::ordered_json j;
  if (!dataset_id.empty()) j["dataset_id"] = dataset_id;
  j["timestamp"] = view.timestamp_ms;
  j["range_m"] = view.range_m;
  j["partition_count"] = view.partition_count;
  j["squarings"] = view.squarings;
  auto& vehicles = j["vehicles"] = nlohmann::ordered_json::array();
  for (const auto& v : view.vehicles) {
    vehicles.push_back({{"vehicle_id", v.vehicle_id},
                        {"latitude", v.latitude},
                        {"longitude", v.longitude},
                        {"speed", v.speed_mps},
                        {"partition_index", v.partition_index},
                        {"color_index", v.color_index},
                        {"character", std::string(1, v.character)}});
  }
  j["timings"] = {{"distance_ms", view.distance_ms}, {"closure_ms", view.closure_ms}};
  return j.dump();
}

}  // namespace bsmsim
