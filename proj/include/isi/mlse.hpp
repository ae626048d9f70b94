#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "isi/channel.hpp"

namespace isi {

/// splitmix64: state += 0x9E3779B97F4A7C15, then the xor-shift-multiply
/// finalizer with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// ((x >> 11) + 0.5) * 2^-53, in the open interval (0, 1).
  double uniform();
  /// Integer in [0, n): ((x >> 32) * n) >> 32.
  std::uint32_t below(std::uint32_t n);

 private:
  std::uint64_t state_;
};

/// Standard normal deviates via Box-Muller on pairs of uniforms u1, u2:
/// r = sqrt(-2 ln u1), emitting r cos(2 pi u2) then r sin(2 pi u2).
class GaussianSource {
 public:
  explicit GaussianSource(SplitMix64& rng) : rng_(rng) {}
  double next();

 private:
  SplitMix64& rng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// M-PAM amplitude for level index i in [0, M): 2i - (M - 1).
constexpr int pam_level(int index, int levels) { return 2 * index - (levels - 1); }

struct SimConfig {
  std::vector<double> channel;
  std::int64_t n_symbols = 0;
  double noise_sigma = 1.0;
  std::uint64_t seed = 0;
  int levels = 2;
};

struct Transmission {
  std::vector<int> symbols;
  std::vector<double> received;
};

/// z_k = sum_i f_i a_{k-i} + n_k with a_k = 0 for k < 0. Symbols for the
/// whole block are drawn first, then the noise, from one SplitMix64 stream.
Transmission simulate_transmission(const SimConfig& cfg);

struct ViterbiOptions {
  /// Decision delay; 0 selects 5L. A depth >= block length gives full-block
  /// maximum likelihood.
  std::size_t traceback_depth = 0;
  std::size_t max_states = 4096;
};

/// Symbol sequence minimizing sum_k (z_k - sum_i f_i a_{k-i})^2 from a known
/// all-zero start. Exact metric ties go to the lexicographically smaller
/// survivor. Throws ResourceError when M^(L-1) exceeds options.max_states.
std::vector<int> viterbi_detect(std::span<const double> taps,
                                std::span<const double> received, int levels,
                                const ViterbiOptions& options = {});

struct BerPoint {
  double snr_db = 0.0;
  std::int64_t errors = 0;
  std::int64_t trials = 0;
  double ber = 0.0;
};

/// sigma such that 10 log10(1 / sigma^2) = snr_db.
double sigma_from_snr_db(double snr_db);

/// One point per SNR with seed + index. Points run in parallel on up to
/// `threads` workers; results do not depend on the worker count.
std::vector<BerPoint> ber_curve(const ChannelTaps& channel, std::span<const double> snr_db,
                                std::int64_t n_symbols, std::uint64_t seed, int levels = 2,
                                int threads = 1);

/// "snr_db,errors,trials,ber" header, ber printed with %.6e.
std::string ber_csv(std::span<const BerPoint> points);

}  // namespace isi
