#include "isi/distance.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "isi/error.hpp"

namespace isi {

namespace {

struct Node {
  int parent = -1;
  int symbol = 0;
  int depth = 0;
  int trailing_zeros = 0;
  double cost = 0.0;
  bool terminal = false;
};

struct QueueEntry {
  double cost;
  std::int64_t seq;
  int node;
  bool operator>(const QueueEntry& o) const {
    return cost != o.cost ? cost > o.cost : seq > o.seq;
  }
};

}  // namespace

DistanceResult min_distance(std::span<const double> f, const AlphabetSpec& spec, double d2_ceiling) {
  spec.validate();
  if (f.empty()) throw InputError("channel must have at least one tap");
  if (!(std::abs(energy(f) - 1.0) <= ChannelTaps::kEnergyTolerance))
    throw InputError("min_distance requires a unit-energy channel (energy " +
                     std::to_string(energy(f)) + ")");
  if (!(d2_ceiling > 0.0)) throw InputError("d2_ceiling must be positive");

  const int L = static_cast<int>(f.size());
  const int W = L - 1;  // window: last L-1 error symbols, newest at the back
  const int q = spec.max_symbol();
  const int cap = spec.max_event_len;

  std::vector<Node> nodes;
  std::vector<int> windows;  // W ints per node
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> frontier;
  std::int64_t seq = 0;

  auto window_of = [&](int idx) { return windows.data() + static_cast<std::ptrdiff_t>(idx) * W; };

  auto push = [&](const Node& n, const int* parent_window, int symbol) {
    const int idx = static_cast<int>(nodes.size());
    nodes.push_back(n);
    if (W > 0) {
      windows.resize(windows.size() + static_cast<std::size_t>(W));
      int* w = window_of(idx);
      if (parent_window) {
        for (int i = 0; i + 1 < W; ++i) w[i] = parent_window[i + 1];
      } else {
        for (int i = 0; i + 1 < W; ++i) w[i] = 0;
      }
      w[W - 1] = symbol;
    }
    frontier.push({n.cost, seq++, idx});
  };

  // Output sample when `symbol` follows the window.
  auto increment = [&](const int* w, int symbol) {
    double e = f[0] * symbol;
    for (int i = 1; i < L; ++i) e += f[i] * w[W - i];
    return e * e;
  };

  // Energy still to come after the newest symbol if the event stops there.
  auto tail = [&](const int* w) {
    double t = 0.0;
    for (int j = 1; j < L; ++j) {
      double e = 0.0;
      for (int i = j; i < L; ++i) e += f[i] * w[W - 1 - (i - j)];
      t += e * e;
    }
    return t;
  };

  std::vector<int> zero_window(static_cast<std::size_t>(std::max(W, 1)), 0);
  for (int s = 1; s <= q; ++s) {
    const double c = increment(zero_window.data(), s);
    if (c <= d2_ceiling) push(Node{-1, s, 1, 0, c, false}, nullptr, s);
  }

  DistanceResult out;
  out.d2_min = std::numeric_limits<double>::infinity();
  std::unordered_set<std::string> closed;
  double last_pop = -std::numeric_limits<double>::infinity();

  while (!frontier.empty()) {
    const QueueEntry top = frontier.top();
    frontier.pop();
    if (top.cost < last_pop) out.frontier_monotone = false;
    last_pop = top.cost;

    const Node node = nodes[static_cast<std::size_t>(top.node)];
    if (node.terminal) {
      std::vector<int> path;
      for (int i = node.parent; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent)
        path.push_back(nodes[static_cast<std::size_t>(i)].symbol);
      std::vector<int> forward(path.rbegin(), path.rend());
      out.d2_min = node.cost;
      out.achieving_event = canonicalize(forward);
      return out;
    }

    // Future cost depends only on the window and the remaining depth.
    const std::vector<int> current(window_of(top.node), window_of(top.node) + W);
    const int* w = current.data();
    std::string key(reinterpret_cast<const char*>(w), sizeof(int) * static_cast<std::size_t>(W));
    key.append(reinterpret_cast<const char*>(&node.depth), sizeof(int));
    if (!closed.insert(std::move(key)).second) continue;
    ++out.nodes_expanded;

    if (node.symbol != 0) {
      const double total = node.cost + (W > 0 ? tail(w) : 0.0);
      if (total <= d2_ceiling) {
        nodes.push_back(Node{top.node, 0, node.depth, 0, total, true});
        if (W > 0) windows.resize(windows.size() + static_cast<std::size_t>(W));
        frontier.push({total, seq++, static_cast<int>(nodes.size()) - 1});
      }
    }

    if (node.depth >= cap) continue;
    for (int s = -q; s <= q; ++s) {
      const int tz = s == 0 ? node.trailing_zeros + 1 : 0;
      if (s == 0 && tz > L - 2) continue;
      const double c = node.cost + increment(w, s);
      if (c > d2_ceiling) continue;
      push(Node{top.node, s, node.depth + 1, tz, c, false}, w, s);
    }
  }

  out.cap_hit = true;
  return out;
}

}  // namespace isi
