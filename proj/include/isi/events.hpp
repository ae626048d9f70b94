#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace isi {

/// Search-space bounds for error events over an M-PAM difference alphabet.
///
/// Error symbols take values in {-(M-1), ..., M-1}. `max_zero_run` bounds the
/// number of consecutive zeros strictly inside an event; a run of L-1 zeros
/// would close the event in a length-L trellis.
struct AlphabetSpec {
  int levels = 2;
  int max_event_len = 12;
  int max_zero_run = 0;

  int max_symbol() const { return levels - 1; }

  /// Throws InputError if levels < 2, max_event_len < 1 or max_zero_run < 0.
  void validate() const;

  /// Defaults for a length-L analysis: cap max(2L, 12), zero run max(L-2, 0).
  static AlphabetSpec for_channel_length(int L, int levels = 2);
};

/// Strict weak order on error symbols: by magnitude, positive before negative.
/// 0 < 1 < -1 < 2 < -2 < ...
constexpr bool symbol_less(int a, int b) {
  const int ma = a < 0 ? -a : a;
  const int mb = b < 0 ? -b : b;
  if (ma != mb) return ma < mb;
  return a > b;
}

/// Lexicographic order over symbol sequences using symbol_less.
bool sequence_less(std::span<const int> a, std::span<const int> b);

/// A canonical error event: nonzero first and last symbols, the
/// representative of its orbit under negation and time reversal.
class ErrorEvent {
 public:
  const std::vector<int>& symbols() const { return symbols_; }
  std::size_t length() const { return symbols_.size(); }
  int operator[](std::size_t i) const { return symbols_[i]; }

  /// "(1,-1,1)"
  std::string to_string() const;

  friend bool operator==(const ErrorEvent&, const ErrorEvent&) = default;
  /// Enumeration order: shorter first, then sequence_less.
  friend bool operator<(const ErrorEvent& a, const ErrorEvent& b);

 private:
  explicit ErrorEvent(std::vector<int> symbols) : symbols_(std::move(symbols)) {}
  friend ErrorEvent canonicalize(std::span<const int> raw);
  friend void for_each_event(const AlphabetSpec&,
                             const std::function<void(const ErrorEvent&)>&);

  std::vector<int> symbols_;
};

/// Unique representative of raw's orbit under {id, -, reverse, -reverse}.
/// Throws InputError when raw is empty or has a zero first/last symbol.
ErrorEvent canonicalize(std::span<const int> raw);

inline ErrorEvent canonicalize(const std::vector<int>& raw) {
  return canonicalize(std::span<const int>(raw));
}

/// True iff raw is already in canonical form.
bool is_canonical(std::span<const int> raw);

/// Streams every canonical event within the spec's bounds exactly once,
/// shortest first and lexicographic within a length.
void for_each_event(const AlphabetSpec& spec,
                    const std::function<void(const ErrorEvent&)>& sink);

std::vector<ErrorEvent> enumerate_events(const AlphabetSpec& spec);

/// e_k -> (-1)^k e_k, canonicalized. Maps the distance of an event on channel
/// f_i to the distance of the modulated event on (-1)^i f_i.
ErrorEvent alternate(const ErrorEvent& event);

/// Smallest canonical member of the orbit under negation, reversal and
/// alternating-sign modulation. Events with equal representatives have
/// equivalent distance behaviour.
ErrorEvent class_representative(const ErrorEvent& event);

}  // namespace isi
