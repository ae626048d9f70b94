#include "isi/mlse.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "isi/error.hpp"
#include "parallel.hpp"

namespace isi {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint32_t SplitMix64::below(std::uint32_t n) {
  return static_cast<std::uint32_t>(((next() >> 32) * n) >> 32);
}

double GaussianSource::next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = rng_.uniform();
  const double u2 = rng_.uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(phi);
  has_cached_ = true;
  return r * std::cos(phi);
}

Transmission simulate_transmission(const SimConfig& cfg) {
  if (cfg.channel.empty()) throw InputError("channel must have at least one tap");
  if (cfg.n_symbols < 1) throw InputError("n_symbols must be >= 1");
  if (!(cfg.noise_sigma > 0.0)) throw InputError("noise sigma must be positive");
  if (cfg.levels < 2) throw InputError("levels must be >= 2");

  const auto n = static_cast<std::size_t>(cfg.n_symbols);
  const std::size_t L = cfg.channel.size();
  SplitMix64 rng(cfg.seed);
  Transmission out;
  out.symbols.resize(n);
  for (auto& a : out.symbols)
    a = pam_level(static_cast<int>(rng.below(static_cast<std::uint32_t>(cfg.levels))), cfg.levels);

  GaussianSource gauss(rng);
  out.received.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double z = 0.0;
    for (std::size_t i = 0; i < L && i <= k; ++i) z += cfg.channel[i] * out.symbols[k - i];
    out.received[k] = z + cfg.noise_sigma * gauss.next();
  }
  return out;
}

namespace {

class Trellis {
 public:
  Trellis(std::span<const double> taps, int levels, std::size_t max_states)
      : f_(taps.begin(), taps.end()), M_(levels), L_(static_cast<int>(taps.size())) {
    states_ = 1;
    for (int j = 1; j < L_; ++j) {
      states_ *= static_cast<std::size_t>(M_);
      if (states_ > max_states)
        throw ResourceError("trellis needs more than " + std::to_string(max_states) +
                            " states (M^(L-1))");
    }
    // A memoryless channel still needs the current symbol in the state.
    if (L_ == 1) states_ = static_cast<std::size_t>(M_);
    oldest_ = L_ >= 2 ? states_ / static_cast<std::size_t>(M_) : 0;
    steady_.resize(states_ * static_cast<std::size_t>(M_));
    for (std::size_t s = 0; s < states_; ++s)
      for (int u = 0; u < M_; ++u) steady_[s * M_ + u] = output(s, u, L_);
  }

  std::size_t states() const { return states_; }
  int levels() const { return M_; }
  /// Predecessor of `next` whose oldest digit is d.
  std::size_t predecessor(std::size_t next, int d) const {
    return L_ >= 2 ? next / M_ + static_cast<std::size_t>(d) * oldest_ : static_cast<std::size_t>(d);
  }
  int newest(std::size_t state) const { return pam_level(static_cast<int>(state % M_), M_); }
  int input_of(std::size_t next) const { return static_cast<int>(next % M_); }

  /// Noiseless output at time k entering with input u from state s.
  double expected(std::size_t s, int u, std::size_t k) const {
    if (k + 1 >= static_cast<std::size_t>(L_)) return steady_[s * M_ + u];
    return output(s, u, static_cast<int>(k) + 1);
  }

 private:
  // Only the first `taps` taps see real symbols; older ones precede k = 0.
  double output(std::size_t s, int u, int taps) const {
    double y = 0.0;
    y += f_[0] * pam_level(u, M_);
    std::size_t rest = s;
    for (int j = 1; j < L_; ++j) {
      const int digit = static_cast<int>(rest % M_);
      rest /= M_;
      if (j < taps) y += f_[j] * pam_level(digit, M_);
    }
    return y;
  }

  std::vector<double> f_;
  int M_;
  int L_;
  std::size_t states_ = 1;
  std::size_t oldest_ = 0;
  std::vector<double> steady_;
};

}  // namespace

std::vector<int> viterbi_detect(std::span<const double> taps, std::span<const double> received,
                                int levels, const ViterbiOptions& options) {
  if (taps.empty()) throw InputError("channel must have at least one tap");
  if (levels < 2) throw InputError("levels must be >= 2");
  const Trellis trellis(taps, levels, options.max_states);
  const std::size_t S = trellis.states();
  const std::size_t n = received.size();
  const int M = levels;
  if (n == 0) return {};

  const std::size_t depth = options.traceback_depth ? options.traceback_depth : 5 * taps.size();
  // Ring of decision rows; row t holds the chosen oldest digit per state.
  const std::size_t rows = std::min(depth, n) + 1;
  std::vector<std::uint16_t> decisions(rows * S);
  auto row = [&](std::size_t t) { return decisions.data() + (t % rows) * S; };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> metric(S, inf), next_metric(S);
  metric[0] = 0.0;

  // Symbols of the survivor ending in `state` at time t, newest first,
  // back to the oldest row still held.
  auto survivor = [&](std::size_t state, std::size_t t) {
    std::vector<int> out;
    const std::size_t floor = t + 1 >= rows ? t + 1 - rows + 1 : 0;
    for (std::size_t time = t;; --time) {
      out.push_back(trellis.newest(state));
      if (time == floor) break;
      state = trellis.predecessor(state, row(time)[state]);
    }
    return out;
  };
  // Lexicographic comparison in time order; true iff survivor a < survivor b.
  auto survivor_less = [&](std::size_t a, std::size_t b, std::size_t t) {
    const std::vector<int> sa = survivor(a, t);
    const std::vector<int> sb = survivor(b, t);
    for (std::size_t i = sa.size(); i-- > 0;)
      if (sa[i] != sb[i]) return sa[i] < sb[i];
    return false;
  };

  std::vector<int> out(n);
  auto trace_from = [&](std::size_t state, std::size_t t, std::size_t emit_from) {
    for (std::size_t time = t;; --time) {
      if (time >= emit_from) out[time] = trellis.newest(state);
      if (time == emit_from) break;
      state = trellis.predecessor(state, row(time)[state]);
    }
  };
  auto best_state = [&](std::size_t t) {
    std::size_t best = 0;
    for (std::size_t s = 1; s < S; ++s) {
      if (metric[s] < metric[best] ||
          (metric[s] == metric[best] && metric[s] != inf && survivor_less(s, best, t)))
        best = s;
    }
    return best;
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::uint16_t* dec = row(k);
    const double z = received[k];
    for (std::size_t s2 = 0; s2 < S; ++s2) {
      const int u = trellis.input_of(s2);
      double best = inf;
      int best_d = 0;
      for (int d = 0; d < M; ++d) {
        const std::size_t s = trellis.predecessor(s2, d);
        if (metric[s] == inf) continue;
        const double e = z - trellis.expected(s, u, k);
        const double m = metric[s] + e * e;
        if (m < best || (m == best && k > 0 &&
                         survivor_less(s, trellis.predecessor(s2, best_d), k - 1))) {
          best = m;
          best_d = d;
        }
      }
      next_metric[s2] = best;
      dec[s2] = static_cast<std::uint16_t>(best_d);
    }
    metric.swap(next_metric);

    if (k >= depth) {
      // Decide time k - depth from the currently best survivor.
      std::size_t state = best_state(k);
      for (std::size_t time = k; time > k - depth; --time)
        state = trellis.predecessor(state, row(time)[state]);
      out[k - depth] = trellis.newest(state);
    }
  }

  const std::size_t emit_from = n > depth ? n - depth : 0;
  trace_from(best_state(n - 1), n - 1, emit_from);
  return out;
}

double sigma_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 20.0); }

std::vector<BerPoint> ber_curve(const ChannelTaps& channel, std::span<const double> snr_db,
                                std::int64_t n_symbols, std::uint64_t seed, int levels,
                                int threads) {
  if (snr_db.empty()) throw InputError("SNR list must be nonempty");
  if (n_symbols < 1) throw InputError("n_symbols must be >= 1");
  std::vector<BerPoint> out(snr_db.size());
  detail::parallel_for(snr_db.size(), threads, [&](std::size_t i) {
    SimConfig cfg{channel.vector(), n_symbols, sigma_from_snr_db(snr_db[i]), seed + i, levels};
    const Transmission tx = simulate_transmission(cfg);
    const std::vector<int> dec = viterbi_detect(channel.taps(), tx.received, levels);
    std::int64_t errors = 0;
    for (std::size_t k = 0; k < dec.size(); ++k) errors += dec[k] != tx.symbols[k];
    out[i] = BerPoint{snr_db[i], errors, n_symbols,
                      static_cast<double>(errors) / static_cast<double>(n_symbols)};
  });
  return out;
}

std::string ber_csv(std::span<const BerPoint> points) {
  std::string out = "snr_db,errors,trials,ber\n";
  char line[128];
  for (const auto& p : points) {
    std::snprintf(line, sizeof line, "%.6g,%lld,%lld,%.6e\n", p.snr_db,
                  static_cast<long long>(p.errors), static_cast<long long>(p.trials), p.ber);
    out += line;
  }
  return out;
}

}  // namespace isi
