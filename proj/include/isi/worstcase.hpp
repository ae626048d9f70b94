#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isi/channel.hpp"
#include "isi/events.hpp"
#include "isi/roots.hpp"

namespace isi {

inline constexpr double kTieTolerance = 1e-9;
inline constexpr double kRootTolerance = 1e-6;

struct SearchOptions {
  /// Skip an eigen solve when the Gershgorin bound already exceeds the
  /// incumbent minimum by more than the tie tolerance.
  bool prune = true;
  int threads = 1;
};

struct WorstCaseReport {
  int L = 0;
  AlphabetSpec spec;
  double lambda_min = 0.0;
  /// Minimizing eigenvector of the first achieving event's matrix.
  std::vector<double> channel;
  /// Every canonical event within kTieTolerance of lambda_min, in canonical order.
  std::vector<ErrorEvent> achieving_events;
  /// Multiplicity of lambda_min inside the first achieving event's matrix.
  int multiplicity = 1;
  double relative_gap = 0.0;
  /// Number of non-equivalent achieving events (see class_representative).
  int ties = 0;
  RootCheck roots;
  std::int64_t events_scanned = 0;
  std::int64_t prune_count = 0;
  std::int64_t eigen_solves = 0;
  /// Non-empty when the event-length cap is below L.
  std::string warning;
};

/// Minimizes the smallest eigenvalue of the L-lag correlation matrix over
/// every enumerated event. Throws InputError for L < 1 or an invalid spec.
WorstCaseReport worst_channel(int L, const AlphabetSpec& spec,
                              const SearchOptions& options = {});

struct SweepConfig {
  int levels = 2;
  std::optional<int> max_event_len;  ///< default max(2L, 12)
  std::optional<int> max_zero_run;   ///< default max(L-2, 0)
  SearchOptions search;

  AlphabetSpec spec_for(int L) const;
};

struct SweepRow {
  int L = 0;
  double lambda_min = 0.0;
  std::optional<double> delta_from_previous;  ///< lambda(L) - lambda(L-1)
  std::optional<bool> strict;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<WorstCaseReport> reports;
  /// lambda(L+1) <= lambda(L) + kTieTolerance for every consecutive pair.
  bool non_increasing = true;
};

SweepResult sweep(int L_max, const SweepConfig& config);

struct ProbeEntry {
  ErrorEvent event;
  std::vector<double> base_channel;  ///< minimizing eigenvector at L lags
  double lambda_L = 0.0;
  /// beta_L f_0 + sum_{i=1}^{L-1} beta_{L-i} f_i
  double cross_term = 0.0;
  double grid_min = 0.0;
  double grid_best_tap = 0.0;
  /// Minimizer of the unnormalized quadratic lambda + f_L(beta_0 f_L + 2c),
  /// f_L = -c / beta_0, evaluated after renormalization.
  double quadratic_tap = 0.0;
  double quadratic_min = 0.0;
  /// Exact minimizer of the renormalized distance over f_L.
  double exact_tap = 0.0;
  double exact_min = 0.0;
  double scan_min = 0.0;  ///< min of the three above
  bool improves = false;  ///< scan_min < lambda_L
};

struct AugmentationReport {
  int L = 0;
  double lambda_L = 0.0;
  double grid_step = 0.0;
  std::vector<ProbeEntry> entries;  ///< one per achieving event
  double cross_term = 0.0;          ///< of the first achieving event
  double min_d2 = 0.0;              ///< min scan_min over entries
  bool improves = false;
};

/// Extends the worst length-L channel by one tap f_L and measures the
/// renormalized distance of each achieving event at L+1 lags.
/// Throws InputError unless grid is in (0, 0.5].
AugmentationReport augmentation_probe(const WorstCaseReport& report, double grid);
AugmentationReport augmentation_probe(int L, const AlphabetSpec& spec, double grid,
                                      const SearchOptions& options = {});

struct UniquenessVerdict {
  int multiplicity = 1;
  double relative_gap = 0.0;
  int ties = 0;
  bool simple = true;  ///< relative gap >= 1e-8
  bool unique = true;  ///< simple eigenvalue and a single event class
};

UniquenessVerdict uniqueness_probe(const WorstCaseReport& report);

}  // namespace isi
