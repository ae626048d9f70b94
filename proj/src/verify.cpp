#include "isi/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "isi/corrmat.hpp"
#include "isi/distance.hpp"
#include "isi/eigen.hpp"
#include "isi/mlse.hpp"
#include "isi/worstcase.hpp"

namespace isi {

namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// 2 - 2 cos(pi / (L + 1)) for L >= 2; the single error bounds L = 1.
double closed_form_worst(int L) {
  if (L == 1) return 1.0;
  return 2.0 - 2.0 * std::cos(std::numbers::pi / (L + 1));
}

double direct_distance(std::span<const double> f, const std::vector<int>& e) {
  const std::size_t n = e.size() + f.size() - 1;
  double d2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double y = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (k >= i && k - i < e.size()) y += f[i] * e[k - i];
    d2 += y * y;
  }
  return d2;
}

std::vector<int> exhaustive_ml(std::span<const double> f, std::span<const double> z) {
  const std::size_t n = z.size();
  std::vector<int> best, cur(n);
  double best_m = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    // Most significant bit is time 0, so masks ascend lexicographically.
    for (std::size_t k = 0; k < n; ++k) cur[k] = (mask >> (n - 1 - k)) & 1 ? 1 : -1;
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double y = 0.0;
      for (std::size_t i = 0; i < f.size() && i <= k; ++i) y += f[i] * cur[k - i];
      const double e = z[k] - y;
      m += e * e;
    }
    if (m < best_m) {
      best_m = m;
      best = cur;
    }
  }
  return best;
}

}  // namespace

std::vector<CheckResult> run_verification(bool full, int threads) {
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    try {
      auto [ok, detail] = fn();
      out.push_back({name, ok, detail});
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };

  const int L_max = full ? 6 : 3;
  SweepConfig cfg;
  cfg.search.threads = threads;
  SweepResult sw;

  run("eigen.closed_forms", [] {
    const Spectrum a = eigen_all(CorrelationMatrix({2, -1}));
    const Spectrum b = eigen_all(CorrelationMatrix({3, -2, 1}));
    const double r = std::sqrt(33.0);
    double err = std::max(std::abs(a.values[0] - 1.0), std::abs(a.values[1] - 3.0));
    err = std::max(err, std::abs(b.values[0] - (7.0 - r) / 2.0));
    err = std::max(err, std::abs(b.values[1] - 2.0));
    err = std::max(err, std::abs(b.values[2] - (7.0 + r) / 2.0));
    return std::pair{err <= 1e-12, fmt("max error %.3e", err)};
  });

  run("events.binary_len3_count", [] {
    const auto ev = enumerate_events(AlphabetSpec{2, 3, 1});
    return std::pair{ev.size() == 8, fmt("%.0f events", static_cast<double>(ev.size()))};
  });

  run("corrmat.quadratic_form_matches_convolution", [&] {
    SplitMix64 rng(11);
    double worst = 0.0;
    for (const auto& ev : enumerate_events(AlphabetSpec{2, 8, 1})) {
      std::vector<double> f(3);
      for (auto& x : f) x = rng.uniform() - 0.5;
      const ChannelTaps taps = ChannelTaps::normalized(f);
      const double q = quadratic_form(build_matrix(autocorrelation(ev, 3), 3), taps.taps());
      worst = std::max(worst, std::abs(q - direct_distance(taps.taps(), ev.symbols())));
    }
    return std::pair{worst <= 1e-12, fmt("max deviation %.3e", worst)};
  });

  run("eigen.interlacing_random", [] {
    SplitMix64 rng(5);
    double worst = 1.0;
    for (int t = 0; t < 200; ++t) {
      const int len = 1 + static_cast<int>(rng.below(10));
      const int L = 2 + static_cast<int>(rng.below(7));
      std::vector<int> e(static_cast<std::size_t>(len));
      for (auto& x : e) x = static_cast<int>(rng.below(3)) - 1;
      e.front() = 1;
      e.back() = rng.below(2) ? 1 : -1;
      const auto rep = interlacing_check(build_matrix(autocorrelation(e, L), L));
      worst = std::min(worst, rep.worst_margin);
    }
    return std::pair{worst >= -kInterlacingTolerance, fmt("worst margin %.3e", worst)};
  });

  run("worstcase.sweep", [&] {
    sw = sweep(L_max, cfg);
    double err = 0.0;
    for (const auto& r : sw.rows) err = std::max(err, std::abs(r.lambda_min - closed_form_worst(r.L)));
    return std::pair{sw.non_increasing && err <= 1e-9,
                     fmt("non-increasing=%.0f, max deviation from 2-2cos(pi/(L+1)) %.3e",
                         sw.non_increasing ? 1.0 : 0.0, err)};
  });

  run("worstcase.prune_exact", [&] {
    bool ok = true;
    for (int L = 1; L <= std::min(L_max, 4); ++L) {
      const AlphabetSpec spec = AlphabetSpec::for_channel_length(L);
      const auto a = worst_channel(L, spec, {true, threads});
      const auto b = worst_channel(L, spec, {false, threads});
      ok = ok && a.lambda_min == b.lambda_min && a.achieving_events == b.achieving_events;
    }
    return std::pair{ok, std::string(ok ? "pruned == exhaustive" : "mismatch")};
  });

  run("worstcase.eigenvector_self_consistent", [&] {
    double err = 0.0;
    for (const auto& r : sw.reports) {
      const auto A = build_matrix(autocorrelation(r.achieving_events.front(), r.L), r.L);
      err = std::max(err, std::abs(quadratic_form(A, r.channel) - r.lambda_min));
    }
    return std::pair{err <= 1e-9, fmt("max |f^T A f - lambda| %.3e", err)};
  });

  run("distance.oracle_equivalence", [&] {
    double err = 0.0;
    for (const auto& r : sw.reports) {
      if (r.L > 4) break;
      const auto d = min_distance(r.channel, AlphabetSpec::for_channel_length(r.L));
      err = std::max(err, std::abs(d.d2_min - r.lambda_min));
    }
    return std::pair{err <= 1e-9, fmt("max |d2_min - lambda| %.3e", err)};
  });

  run("worstcase.augmentation_cross_term", [&] {
    bool ok = true;
    for (const auto& r : sw.reports) {
      if (r.L == L_max) break;
      const auto probe = augmentation_probe(r, 0.01);
      for (const auto& e : probe.entries)
        if (std::abs(e.cross_term) > 1e-12 && !e.improves) ok = false;
    }
    return std::pair{ok, std::string("nonzero cross term implies d2 < lambda_L")};
  });

  run("worstcase.roots_on_unit_circle", [&] {
    bool ok = true;
    double worst = 0.0;
    for (const auto& r : sw.reports) {
      if (!uniqueness_probe(r).unique) continue;
      ok = ok && r.roots.pass;
      worst = std::max(worst, r.roots.max_deviation);
    }
    return std::pair{ok, fmt("max | |z| - 1 | %.3e", worst)};
  });

  run("mlse.viterbi_equals_exhaustive", [&] {
    const int blocks = full ? 100 : 20;
    int agree = 0;
    for (int b = 0; b < blocks; ++b) {
      SplitMix64 rng(1000 + b);
      const int L = 1 + static_cast<int>(rng.below(3));
      const int n = 6 + static_cast<int>(rng.below(9));
      std::vector<double> f(static_cast<std::size_t>(L));
      for (auto& x : f) x = rng.uniform() - 0.5;
      const ChannelTaps taps = ChannelTaps::normalized(f);
      const auto tx = simulate_transmission({taps.vector(), n, 0.6, 77u + b, 2});
      const auto v = viterbi_detect(taps.taps(), tx.received, 2, {static_cast<std::size_t>(n), 4096});
      agree += v == exhaustive_ml(taps.taps(), tx.received);
    }
    return std::pair{agree == blocks, fmt("%.0f of %.0f blocks agree", agree, blocks)};
  });

  if (full) {
    run("mlse.ber_q2", [] {
      const auto taps = ChannelTaps::from_unit_energy({1.0});
      const auto tx = simulate_transmission({taps.vector(), 100000, 0.5, 7, 2});
      const auto v = viterbi_detect(taps.taps(), tx.received, 2);
      std::int64_t errors = 0;
      for (std::size_t k = 0; k < v.size(); ++k) errors += v[k] != tx.symbols[k];
      const double ber = errors / 1e5;
      const double q = 0.5 * std::erfc(2.0 / std::sqrt(2.0));
      const double se = std::sqrt(q * (1 - q) / 1e5);
      return std::pair{std::abs(ber - q) <= 3 * se, fmt("ber %.5f vs Q(2) %.5f", ber, q)};
    });
  }
  return out;
}

}  // namespace isi
