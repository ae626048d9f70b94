#pragma once

#include <cstdint>
#include <optional>

#include "isi/channel.hpp"
#include "isi/events.hpp"

namespace isi {

inline constexpr double kDefaultDistanceCeiling = 1.0 + 1e-9;

struct DistanceResult {
  double d2_min = 0.0;
  std::optional<ErrorEvent> achieving_event;
  std::int64_t nodes_expanded = 0;
  /// No closed event within d2_ceiling (and the event-length cap).
  bool cap_hit = false;
  /// Popped costs never decreased during the search.
  bool frontier_monotone = true;
};

/// Minimum squared distance of `channel` by uniform-cost search over the
/// error trellis (state = last L-1 error symbols). Paths are limited to
/// spec.max_event_len symbols; spec.max_zero_run is ignored since the trellis
/// closes an event after L-1 zeros.
/// Throws InputError when the taps are not of unit energy or d2_ceiling <= 0.
DistanceResult min_distance(std::span<const double> channel, const AlphabetSpec& spec,
                            double d2_ceiling = kDefaultDistanceCeiling);

inline DistanceResult min_distance(const ChannelTaps& channel, const AlphabetSpec& spec,
                                   double d2_ceiling = kDefaultDistanceCeiling) {
  return min_distance(channel.taps(), spec, d2_ceiling);
}

}  // namespace isi
