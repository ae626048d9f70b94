#include "isi/worstcase.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "isi/corrmat.hpp"
#include "isi/eigen.hpp"
#include "isi/error.hpp"
#include "parallel.hpp"

namespace isi {

namespace {

constexpr std::size_t kChunk = 4096;

struct Solved {
  double lambda = 0.0;
  bool pruned = false;
};

using Key = std::vector<std::int64_t>;

}  // namespace

WorstCaseReport worst_channel(int L, const AlphabetSpec& spec, const SearchOptions& options) {
  if (L < 1) throw InputError("channel length L must be >= 1, got " + std::to_string(L));
  spec.validate();

  const double inf = std::numeric_limits<double>::infinity();
  std::map<Key, Solved> memo;
  double best = inf;
  std::vector<std::pair<ErrorEvent, double>> candidates;

  WorstCaseReport rep;
  rep.L = L;
  rep.spec = spec;
  if (spec.max_event_len < L)
    rep.warning = "max_event_len " + std::to_string(spec.max_event_len) + " is below L = " +
                  std::to_string(L) + "; long events are not searched";

  std::vector<ErrorEvent> chunk;
  chunk.reserve(kChunk);

  auto flush = [&] {
    std::vector<Key> keys;
    keys.reserve(chunk.size());
    std::vector<const Key*> fresh;
    std::set<Key> seen_in_chunk;
    for (const auto& ev : chunk) {
      keys.push_back(autocorrelation(ev, L).beta());
      if (!memo.contains(keys.back()) && seen_in_chunk.insert(keys.back()).second)
        fresh.push_back(&keys.back());
    }

    // Incumbent frozen for the whole chunk keeps prune decisions independent
    // of the worker count.
    const double incumbent = best;
    std::vector<Solved> results(fresh.size());
    detail::parallel_for(fresh.size(), options.threads, [&](std::size_t i) {
      const CorrelationMatrix A(*fresh[i]);
      if (options.prune && A.gershgorin_lower_bound() > incumbent + kTieTolerance) {
        results[i].pruned = true;
        return;
      }
      results[i].lambda = eigen_all(A).values.front();
    });
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      memo.emplace(*fresh[i], results[i]);
      if (!results[i].pruned) ++rep.eigen_solves;
    }

    for (std::size_t i = 0; i < chunk.size(); ++i) {
      const Solved& s = memo.at(keys[i]);
      if (s.pruned) {
        ++rep.prune_count;
        continue;
      }
      if (s.lambda <= best + kTieTolerance) candidates.emplace_back(chunk[i], s.lambda);
      best = std::min(best, s.lambda);
    }
    chunk.clear();
  };

  for_each_event(spec, [&](const ErrorEvent& ev) {
    ++rep.events_scanned;
    chunk.push_back(ev);
    if (chunk.size() == kChunk) flush();
  });
  if (!chunk.empty()) flush();

  rep.lambda_min = best;
  std::set<std::vector<int>> classes;
  for (auto& [ev, lambda] : candidates) {
    if (lambda > best + kTieTolerance) continue;
    classes.insert(class_representative(ev).symbols());
    rep.achieving_events.push_back(ev);
  }
  rep.ties = static_cast<int>(classes.size());

  const CorrelationMatrix A = build_matrix(autocorrelation(rep.achieving_events.front(), L), L);
  const EigenPair pair = eigen_min(A);
  rep.channel = pair.vector;
  rep.multiplicity = pair.multiplicity;
  rep.relative_gap = pair.relative_gap;
  rep.roots = root_check(rep.channel, kRootTolerance);
  return rep;
}

AlphabetSpec SweepConfig::spec_for(int L) const {
  AlphabetSpec spec = AlphabetSpec::for_channel_length(L, levels);
  if (max_event_len) spec.max_event_len = *max_event_len;
  if (max_zero_run) spec.max_zero_run = *max_zero_run;
  return spec;
}

SweepResult sweep(int L_max, const SweepConfig& config) {
  if (L_max < 1) throw InputError("L_max must be >= 1, got " + std::to_string(L_max));
  SweepResult out;
  for (int L = 1; L <= L_max; ++L) {
    WorstCaseReport rep = worst_channel(L, config.spec_for(L), config.search);
    SweepRow row{L, rep.lambda_min, std::nullopt, std::nullopt};
    if (!out.rows.empty()) {
      const double prev = out.rows.back().lambda_min;
      row.delta_from_previous = rep.lambda_min - prev;
      row.strict = rep.lambda_min < prev - kTieTolerance;
      if (rep.lambda_min > prev + kTieTolerance) out.non_increasing = false;
    }
    out.rows.push_back(row);
    out.reports.push_back(std::move(rep));
  }
  return out;
}

namespace {

double augmented_distance(const CorrelationMatrix& A1, const std::vector<double>& base, double tap) {
  std::vector<double> g(base);
  g.push_back(tap);
  const double norm = std::sqrt(energy(g));
  for (double& x : g) x /= norm;
  return quadratic_form(A1, g);
}

}  // namespace

AugmentationReport augmentation_probe(const WorstCaseReport& report, double grid) {
  if (!(grid > 0.0 && grid <= 0.5)) throw InputError("grid step must be in (0, 0.5]");
  const int L = report.L;

  AugmentationReport out;
  out.L = L;
  out.lambda_L = report.lambda_min;
  out.grid_step = grid;
  out.min_d2 = std::numeric_limits<double>::infinity();

  const auto steps = static_cast<int>(std::floor(1.0 / grid + 1e-9));
  for (const ErrorEvent& ev : report.achieving_events) {
    const Autocorrelation acf = autocorrelation(ev, L + 1);
    const EigenPair base = eigen_min(build_matrix(acf, L));
    const CorrelationMatrix A1 = build_matrix(acf, L + 1);
    const std::vector<double>& f = base.vector;

    ProbeEntry e{ev, f, base.value};
    double c = static_cast<double>(acf[static_cast<std::size_t>(L)]) * f[0];
    for (int i = 1; i < L; ++i) c += static_cast<double>(acf[static_cast<std::size_t>(L - i)]) * f[i];
    e.cross_term = c;

    e.grid_min = std::numeric_limits<double>::infinity();
    for (int k = -steps; k <= steps; ++k) {
      const double tap = k * grid;
      const double d2 = augmented_distance(A1, f, tap);
      if (d2 < e.grid_min) {
        e.grid_min = d2;
        e.grid_best_tap = tap;
      }
    }

    const double beta0 = static_cast<double>(acf[0]);
    e.quadratic_tap = -c / beta0;
    e.quadratic_min = augmented_distance(A1, f, e.quadratic_tap);

    // In the orthonormal basis {(f, 0), (0, 1)} the form is [[lambda, c], [c, beta0]].
    const double lam = base.value;
    const double mu = 0.5 * (lam + beta0) - std::hypot(0.5 * (beta0 - lam), c);
    e.exact_tap = c != 0.0 ? (mu - lam) / c : 0.0;
    e.exact_min = augmented_distance(A1, f, e.exact_tap);

    e.scan_min = std::min({e.grid_min, e.quadratic_min, e.exact_min});
    e.improves = e.scan_min < e.lambda_L - 1e-12;
    out.min_d2 = std::min(out.min_d2, e.scan_min);
    out.entries.push_back(std::move(e));
  }
  out.cross_term = out.entries.front().cross_term;
  out.improves = out.min_d2 < out.lambda_L - 1e-12;
  return out;
}

AugmentationReport augmentation_probe(int L, const AlphabetSpec& spec, double grid,
                                      const SearchOptions& options) {
  if (!(grid > 0.0 && grid <= 0.5)) throw InputError("grid step must be in (0, 0.5]");
  return augmentation_probe(worst_channel(L, spec, options), grid);
}

UniquenessVerdict uniqueness_probe(const WorstCaseReport& report) {
  UniquenessVerdict v;
  v.multiplicity = report.multiplicity;
  v.relative_gap = report.relative_gap;
  v.ties = report.ties;
  v.simple = report.multiplicity == 1;
  v.unique = v.simple && v.ties == 1;
  return v;
}

}  // namespace isi
