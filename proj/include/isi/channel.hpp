#pragma once

#include <span>
#include <vector>

namespace isi {

double energy(std::span<const double> taps);

/// Real FIR channel coefficients f_0 ... f_{L-1} with unit energy.
class ChannelTaps {
 public:
  static constexpr double kEnergyTolerance = 1e-12;

  /// Wraps taps already of unit energy; throws InputError otherwise
  /// (or when empty / non-finite).
  static ChannelTaps from_unit_energy(std::vector<double> taps,
                                      double tol = kEnergyTolerance);

  /// Scales taps to unit energy; throws InputError for an all-zero vector.
  static ChannelTaps normalized(std::vector<double> taps);

  std::size_t size() const { return taps_.size(); }
  double operator[](std::size_t i) const { return taps_[i]; }
  std::span<const double> taps() const { return taps_; }
  const std::vector<double>& vector() const { return taps_; }

 private:
  explicit ChannelTaps(std::vector<double> taps) : taps_(std::move(taps)) {}
  std::vector<double> taps_;
};

}  // namespace isi
