#include "sfm/maxflow.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

#include "sfm/errors.h"

namespace sfm {

FlowNetwork::FlowNetwork(std::size_t num_nodes, CapacityMode mode)
    : num_nodes_(num_nodes), mode_(mode), source_cap_(num_nodes, 0.0), sink_cap_(num_nodes, 0.0) {}

double FlowNetwork::quantize(double c) const {
  if (!std::isfinite(c) || c < 0.0) throw ArgumentError("flow network: capacities must be finite and >= 0");
  if (mode_ == CapacityMode::kScaledInteger) return std::round(c * kCapacityScale) / kCapacityScale;
  return c;
}

void FlowNetwork::add_edge(std::size_t p, std::size_t q, double cap, double rev_cap) {
  if (p >= num_nodes_ || q >= num_nodes_) throw ArgumentError("flow network: node out of range");
  if (p == q) throw ArgumentError("flow network: self-loop");
  head_.push_back(q);
  cap_.push_back(quantize(cap));
  head_.push_back(p);
  cap_.push_back(quantize(rev_cap));
}

void FlowNetwork::add_terminal(std::size_t j, double from_source, double to_sink) {
  if (j >= num_nodes_) throw ArgumentError("flow network: node out of range");
  source_cap_[j] += quantize(from_source);
  sink_cap_[j] += quantize(to_sink);
}

double cut_capacity(const FlowNetwork& net, const Subset& source_side) {
  double total = 0.0;
  for (std::size_t j = 0; j < net.num_nodes(); ++j) {
    total += source_side.contains(j) ? net.sink_capacity(j) : net.source_capacity(j);
  }
  for (std::size_t a = 0; a < net.num_arcs(); ++a) {
    if (source_side.contains(net.arc_tail(a)) && !source_side.contains(net.arc_head(a))) {
      total += net.arc_capacity(a);
    }
  }
  return total;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kTerminal = kNone - 1;
constexpr std::size_t kOrphan = kNone - 2;

// Residual state shared by both algorithms. Terminal arcs are folded into a
// signed residual: term[j] > 0 is open source->j capacity, term[j] < 0 is open
// j->sink capacity.
struct Residual {
  std::size_t n = 0;
  std::vector<std::size_t> head;
  std::vector<double> rcap;
  std::vector<std::size_t> first;  // CSR over arcs leaving each node
  std::vector<std::size_t> out;
  std::vector<double> term;
  double flow = 0.0;
  double tol = 0.0;

  explicit Residual(const FlowNetwork& net, bool exact) : n(net.num_nodes()) {
    const std::size_t m = net.num_arcs();
    head.resize(m);
    rcap.resize(m);
    first.assign(n + 1, 0);
    double scale = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      head[a] = net.arc_head(a);
      rcap[a] = net.arc_capacity(a);
      scale = std::max(scale, rcap[a]);
      ++first[net.arc_tail(a) + 1];
    }
    for (std::size_t j = 0; j < n; ++j) first[j + 1] += first[j];
    out.resize(m);
    std::vector<std::size_t> fill(first.begin(), first.end() - 1);
    for (std::size_t a = 0; a < m; ++a) out[fill[net.arc_tail(a)]++] = a;
    term.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double src = net.source_capacity(j);
      const double snk = net.sink_capacity(j);
      scale = std::max({scale, src, snk});
      flow += std::min(src, snk);
      term[j] = src - snk;
    }
    tol = exact ? 0.0 : 1e-13 * std::max(1.0, scale);
  }

  bool open(std::size_t a) const { return rcap[a] > tol; }
  bool source_open(std::size_t j) const { return term[j] > tol; }
  bool sink_open(std::size_t j) const { return term[j] < -tol; }
};

class SearchTreeSolver {
 public:
  explicit SearchTreeSolver(Residual& r)
      : r_(r), parent_(r.n, kNone), in_sink_(r.n, 0), ts_(r.n, 0), dist_(r.n, 0), queued_(r.n, 0) {}

  void run() {
    for (std::size_t j = 0; j < r_.n; ++j) {
      if (r_.source_open(j)) {
        attach_terminal(j, false);
      } else if (r_.sink_open(j)) {
        attach_terminal(j, true);
      }
    }
    std::size_t current = kNone;
    while (true) {
      if (current == kNone || parent_[current] == kNone) {
        current = next_active();
        if (current == kNone) break;
      }
      const std::size_t bridge = grow(current);
      if (bridge == kNone) {
        current = kNone;
        continue;
      }
      ++time_;
      augment(bridge);
      adopt();
    }
  }

 private:
  void attach_terminal(std::size_t j, bool sink) {
    parent_[j] = kTerminal;
    in_sink_[j] = sink ? 1 : 0;
    ts_[j] = 0;
    dist_[j] = 1;
    activate(j);
  }

  void activate(std::size_t j) {
    if (!queued_[j]) {
      queued_[j] = 1;
      active_.push_back(j);
    }
  }

  std::size_t next_active() {
    while (!active_.empty()) {
      const std::size_t j = active_.front();
      active_.pop_front();
      queued_[j] = 0;
      if (parent_[j] != kNone) return j;
    }
    return kNone;
  }

  std::size_t tail(std::size_t a) const { return r_.head[a ^ 1U]; }

  // Expands the tree of i; returns an open arc from the source tree into the
  // sink tree if one is met.
  std::size_t grow(std::size_t i) {
    const bool sink = in_sink_[i] != 0;
    for (std::size_t k = r_.first[i]; k < r_.first[i + 1]; ++k) {
      const std::size_t a = r_.out[k];
      // Source tree grows along i->j; sink tree along j->i.
      const std::size_t forward = sink ? (a ^ 1U) : a;
      if (!r_.open(forward)) continue;
      const std::size_t j = r_.head[a];
      if (parent_[j] == kNone) {
        in_sink_[j] = sink ? 1 : 0;
        parent_[j] = a ^ 1U;
        ts_[j] = ts_[i];
        dist_[j] = dist_[i] + 1;
        activate(j);
      } else if ((in_sink_[j] != 0) != sink) {
        // Keep i active: it may still have other open arcs.
        activate(i);
        return forward;
      } else if (ts_[j] <= ts_[i] && dist_[j] > dist_[i]) {
        parent_[j] = a ^ 1U;
        ts_[j] = ts_[i];
        dist_[j] = dist_[i] + 1;
      }
    }
    return kNone;
  }

  void make_orphan(std::size_t j) {
    parent_[j] = kOrphan;
    orphans_.push_front(j);
  }

  void augment(std::size_t bridge) {
    // Bottleneck along source side, bridge, and sink side.
    double b = r_.rcap[bridge];
    std::size_t i = tail(bridge);
    while (parent_[i] != kTerminal) {
      const std::size_t pa = parent_[i];
      b = std::min(b, r_.rcap[pa ^ 1U]);
      i = r_.head[pa];
    }
    b = std::min(b, r_.term[i]);
    i = r_.head[bridge];
    while (parent_[i] != kTerminal) {
      const std::size_t pa = parent_[i];
      b = std::min(b, r_.rcap[pa]);
      i = r_.head[pa];
    }
    b = std::min(b, -r_.term[i]);

    r_.rcap[bridge ^ 1U] += b;
    r_.rcap[bridge] -= b;
    i = tail(bridge);
    while (parent_[i] != kTerminal) {
      const std::size_t pa = parent_[i];
      r_.rcap[pa] += b;
      r_.rcap[pa ^ 1U] -= b;
      const std::size_t up = r_.head[pa];
      if (!r_.open(pa ^ 1U)) make_orphan(i);
      i = up;
    }
    r_.term[i] -= b;
    if (!r_.source_open(i)) make_orphan(i);
    i = r_.head[bridge];
    while (parent_[i] != kTerminal) {
      const std::size_t pa = parent_[i];
      r_.rcap[pa ^ 1U] += b;
      r_.rcap[pa] -= b;
      const std::size_t down = r_.head[pa];
      if (!r_.open(pa)) make_orphan(i);
      i = down;
    }
    r_.term[i] += b;
    if (!r_.sink_open(i)) make_orphan(i);
    r_.flow += b;
  }

  // Length of j's path to its terminal, or kNone if it runs through an orphan.
  std::size_t origin_distance(std::size_t j) {
    std::size_t d = 0;
    std::size_t k = j;
    while (true) {
      if (ts_[k] == time_) {
        d += dist_[k];
        break;
      }
      const std::size_t pa = parent_[k];
      ++d;
      if (pa == kTerminal) {
        ts_[k] = time_;
        dist_[k] = 1;
        break;
      }
      if (pa == kOrphan) return kNone;
      k = r_.head[pa];
    }
    for (k = j; ts_[k] != time_; k = r_.head[parent_[k]]) {
      ts_[k] = time_;
      dist_[k] = d--;
    }
    return dist_[j];
  }

  void adopt() {
    while (!orphans_.empty()) {
      const std::size_t i = orphans_.front();
      orphans_.pop_front();
      const bool sink = in_sink_[i] != 0;
      std::size_t best_arc = kNone;
      std::size_t best_dist = kNone;
      if (sink ? r_.sink_open(i) : r_.source_open(i)) {
        best_arc = kTerminal;
        best_dist = 0;
      }
      for (std::size_t k = r_.first[i]; k < r_.first[i + 1] && best_arc != kTerminal; ++k) {
        const std::size_t a = r_.out[k];
        // New parent j must reach i (source tree) or be reached from i (sink tree).
        const std::size_t into_tree = sink ? a : (a ^ 1U);
        if (!r_.open(into_tree)) continue;
        const std::size_t j = r_.head[a];
        if (parent_[j] == kNone || (in_sink_[j] != 0) != sink) continue;
        const std::size_t d = origin_distance(j);
        if (d != kNone && d < best_dist) {
          best_dist = d;
          best_arc = a;
        }
      }
      if (best_arc == kTerminal) {
        parent_[i] = kTerminal;
        ts_[i] = time_;
        dist_[i] = 1;
        continue;
      }
      if (best_arc != kNone) {
        parent_[i] = best_arc;
        ts_[i] = time_;
        dist_[i] = best_dist + 1;
        continue;
      }
      parent_[i] = kNone;
      for (std::size_t k = r_.first[i]; k < r_.first[i + 1]; ++k) {
        const std::size_t a = r_.out[k];
        const std::size_t j = r_.head[a];
        if (parent_[j] == kNone || (in_sink_[j] != 0) != sink) continue;
        const std::size_t into_tree = sink ? a : (a ^ 1U);
        if (r_.open(into_tree)) activate(j);
        const std::size_t pj = parent_[j];
        if (pj != kTerminal && pj != kOrphan && r_.head[pj] == i) make_orphan_rear(j);
      }
    }
  }

  void make_orphan_rear(std::size_t j) {
    parent_[j] = kOrphan;
    orphans_.push_back(j);
  }

  Residual& r_;
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> in_sink_;
  std::vector<std::size_t> ts_;
  std::vector<std::size_t> dist_;
  std::vector<std::uint8_t> queued_;
  std::deque<std::size_t> active_;
  std::deque<std::size_t> orphans_;
  std::size_t time_ = 0;
};

// Edmonds-Karp on the same residual representation.
void run_shortest_paths(Residual& r) {
  const std::size_t n = r.n;
  const std::size_t source = kTerminal;
  std::vector<std::size_t> pred(n);
  while (true) {
    std::fill(pred.begin(), pred.end(), kNone);
    std::queue<std::size_t> q;
    for (std::size_t j = 0; j < n; ++j) {
      if (r.source_open(j)) {
        pred[j] = source;
        q.push(j);
      }
    }
    std::size_t last = kNone;
    while (!q.empty() && last == kNone) {
      const std::size_t i = q.front();
      q.pop();
      if (r.sink_open(i)) {
        last = i;
        break;
      }
      for (std::size_t k = r.first[i]; k < r.first[i + 1]; ++k) {
        const std::size_t a = r.out[k];
        const std::size_t j = r.head[a];
        if (pred[j] == kNone && r.open(a)) {
          pred[j] = a;
          q.push(j);
        }
      }
    }
    if (last == kNone) return;
    double b = -r.term[last];
    std::size_t i = last;
    while (pred[i] != source) {
      b = std::min(b, r.rcap[pred[i]]);
      i = r.head[pred[i] ^ 1U];
    }
    b = std::min(b, r.term[i]);
    i = last;
    r.term[last] += b;
    while (pred[i] != source) {
      r.rcap[pred[i]] -= b;
      r.rcap[pred[i] ^ 1U] += b;
      i = r.head[pred[i] ^ 1U];
    }
    r.term[i] -= b;
    r.flow += b;
  }
}

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net, FlowAlgorithm algorithm) {
  // Integer-scaled capacities keep every update exact; no tolerance needed.
  bool exact = true;
  for (std::size_t a = 0; a < net.num_arcs() && exact; ++a) {
    const double c = net.arc_capacity(a) * kCapacityScale;
    exact = c == std::round(c);
  }
  for (std::size_t j = 0; j < net.num_nodes() && exact; ++j) {
    const double c1 = net.source_capacity(j) * kCapacityScale;
    const double c2 = net.sink_capacity(j) * kCapacityScale;
    exact = c1 == std::round(c1) && c2 == std::round(c2);
  }
  Residual r(net, exact);
  if (algorithm == FlowAlgorithm::kSearchTrees) {
    SearchTreeSolver(r).run();
  } else {
    run_shortest_paths(r);
  }

  MaxFlowResult result;
  result.flow_value = r.flow;
  const std::size_t n = r.n;
  result.source_side = Subset(n);
  std::vector<std::size_t> stack;
  for (std::size_t j = 0; j < n; ++j) {
    if (r.source_open(j)) {
      result.source_side.insert(j);
      stack.push_back(j);
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t k = r.first[i]; k < r.first[i + 1]; ++k) {
      const std::size_t a = r.out[k];
      const std::size_t j = r.head[a];
      if (!result.source_side.contains(j) && r.open(a)) {
        result.source_side.insert(j);
        stack.push_back(j);
      }
    }
  }

  auto& cert = result.certificate;
  cert.arc_flow.resize(net.num_arcs());
  cert.net_outflow.assign(n, 0.0);
  for (std::size_t a = 0; a < net.num_arcs(); ++a) {
    const double f = net.arc_capacity(a) - r.rcap[a];
    cert.arc_flow[a] = std::max(0.0, f);
    cert.net_outflow[net.arc_tail(a)] += f;
  }
  cert.source_flow.resize(n);
  cert.sink_flow.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double src = net.source_capacity(j);
    const double snk = net.sink_capacity(j);
    const double e = cert.net_outflow[j];
    const double fs = std::clamp(snk + e, 0.0, src);
    cert.source_flow[j] = fs;
    cert.sink_flow[j] = std::clamp(fs - e, 0.0, snk);
  }
  return result;
}

}  // namespace sfm
