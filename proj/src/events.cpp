#include "isi/events.hpp"

#include <algorithm>

#include "isi/error.hpp"

namespace isi {

void AlphabetSpec::validate() const {
  if (levels < 2) throw InputError("alphabet needs at least 2 levels, got " + std::to_string(levels));
  if (max_event_len < 1)
    throw InputError("max_event_len must be >= 1, got " + std::to_string(max_event_len));
  if (max_zero_run < 0)
    throw InputError("max_zero_run must be >= 0, got " + std::to_string(max_zero_run));
}

AlphabetSpec AlphabetSpec::for_channel_length(int L, int levels) {
  if (L < 1) throw InputError("channel length must be >= 1, got " + std::to_string(L));
  return AlphabetSpec{levels, std::max(2 * L, 12), std::max(L - 2, 0)};
}

bool sequence_less(std::span<const int> a, std::span<const int> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), symbol_less);
}

bool operator<(const ErrorEvent& a, const ErrorEvent& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return sequence_less(a.symbols_, b.symbols_);
}

std::string ErrorEvent::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(symbols_[i]);
  }
  return out + ")";
}

namespace {

void check_borders(std::span<const int> raw) {
  if (raw.empty()) throw InputError("error event must be nonempty");
  if (raw.front() == 0 || raw.back() == 0)
    throw InputError("error event must have nonzero first and last symbols");
}

// Compares the sign-normalized sequence against its sign-normalized reversal
// without materializing either. Returns <0, 0, >0.
int compare_with_reversal(std::span<const int> raw) {
  const std::size_t n = raw.size();
  const int fwd = raw.front() > 0 ? 1 : -1;
  const int rev = raw.back() > 0 ? 1 : -1;
  for (std::size_t i = 0; i < n; ++i) {
    const int a = fwd * raw[i];
    const int b = rev * raw[n - 1 - i];
    if (a == b) continue;
    return symbol_less(a, b) ? -1 : 1;
  }
  return 0;
}

}  // namespace

bool is_canonical(std::span<const int> raw) {
  if (raw.empty() || raw.front() <= 0 || raw.back() == 0) return false;
  return compare_with_reversal(raw) <= 0;
}

ErrorEvent canonicalize(std::span<const int> raw) {
  check_borders(raw);
  const bool use_reversal = compare_with_reversal(raw) > 0;
  const std::size_t n = raw.size();
  std::vector<int> out(n);
  if (use_reversal) {
    const int s = raw.back() > 0 ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i) out[i] = s * raw[n - 1 - i];
  } else {
    const int s = raw.front() > 0 ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i) out[i] = s * raw[i];
  }
  return ErrorEvent(std::move(out));
}

void for_each_event(const AlphabetSpec& spec, const std::function<void(const ErrorEvent&)>& sink) {
  spec.validate();
  const int q = spec.max_symbol();

  // Alphabet in symbol order: 0, 1, -1, 2, -2, ...
  std::vector<int> ordered{0};
  for (int m = 1; m <= q; ++m) {
    ordered.push_back(m);
    ordered.push_back(-m);
  }

  std::vector<int> seq;
  for (int len = 1; len <= spec.max_event_len; ++len) {
    seq.assign(static_cast<std::size_t>(len), 0);
    const auto n = static_cast<std::size_t>(len);

    // Depth-first in lexicographic order. zero_run counts trailing zeros.
    auto recurse = [&](auto&& self, std::size_t pos, int zero_run) -> void {
      if (pos == n) {
        if (compare_with_reversal(seq) <= 0) sink(ErrorEvent(seq));
        return;
      }
      const bool border = pos == 0 || pos + 1 == n;
      for (int s : ordered) {
        if (s == 0 && (border || zero_run + 1 > spec.max_zero_run)) continue;
        if (pos == 0 && s < 0) continue;
        seq[pos] = s;
        self(self, pos + 1, s == 0 ? zero_run + 1 : 0);
      }
    };
    recurse(recurse, 0, 0);
  }
}

std::vector<ErrorEvent> enumerate_events(const AlphabetSpec& spec) {
  std::vector<ErrorEvent> out;
  for_each_event(spec, [&](const ErrorEvent& e) { out.push_back(e); });
  return out;
}

ErrorEvent alternate(const ErrorEvent& event) {
  std::vector<int> t(event.symbols());
  for (std::size_t k = 1; k < t.size(); k += 2) t[k] = -t[k];
  return canonicalize(t);
}

ErrorEvent class_representative(const ErrorEvent& event) {
  ErrorEvent alt = alternate(event);
  return alt < event ? alt : event;
}

}  // namespace isi
