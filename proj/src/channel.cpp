#include "isi/channel.hpp"

#include <cmath>
#include <string>

#include "isi/error.hpp"

namespace isi {

double energy(std::span<const double> taps) {
  double e = 0.0;
  for (double t : taps) e += t * t;
  return e;
}

namespace {
void check_taps(const std::vector<double>& taps) {
  if (taps.empty()) throw InputError("channel must have at least one tap");
  for (double t : taps)
    if (!std::isfinite(t)) throw InputError("channel taps must be finite");
}
}  // namespace

ChannelTaps ChannelTaps::from_unit_energy(std::vector<double> taps, double tol) {
  check_taps(taps);
  const double e = energy(taps);
  if (std::abs(e - 1.0) > tol)
    throw InputError("channel energy " + std::to_string(e) + " is not 1");
  return ChannelTaps(std::move(taps));
}

ChannelTaps ChannelTaps::normalized(std::vector<double> taps) {
  check_taps(taps);
  const double e = energy(taps);
  if (e == 0.0) throw InputError("channel taps are all zero");
  const double s = 1.0 / std::sqrt(e);
  for (double& t : taps) t *= s;
  return ChannelTaps(std::move(taps));
}

}  // namespace isi
