#include "sfm/cut_function.h"

#include <cmath>

#include "sfm/errors.h"

namespace sfm {

CutFunction::CutFunction(std::size_t n, std::vector<CutArc> arcs, std::vector<double> modular,
                         std::string label)
    : n_(n), arcs_(std::move(arcs)), modular_(std::move(modular)), label_(std::move(label)) {
  if (modular_.size() != n_) throw ArgumentError("cut function: modular length mismatch");
  for (const auto& arc : arcs_) {
    if (arc.tail >= n_ || arc.head >= n_) throw ArgumentError("cut function: arc out of range");
    if (arc.tail == arc.head) throw ArgumentError("cut function: self-loop");
    if (!(arc.capacity >= 0.0) || !std::isfinite(arc.capacity)) {
      throw ArgumentError("cut function: capacities must be finite and >= 0");
    }
  }
}

CutFunction CutFunction::from_edges(std::size_t n,
                                    std::span<const std::pair<std::size_t, std::size_t>> edges,
                                    std::span<const double> weights, std::vector<double> modular,
                                    std::string label) {
  if (edges.size() != weights.size()) throw ArgumentError("cut function: weight count mismatch");
  std::vector<CutArc> arcs;
  arcs.reserve(2 * edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    arcs.push_back({edges[e].first, edges[e].second, weights[e]});
    arcs.push_back({edges[e].second, edges[e].first, weights[e]});
  }
  return CutFunction(n, std::move(arcs), std::move(modular), std::move(label));
}

double CutFunction::evaluate(const Subset& a) const {
  double total = modular_sum(modular_, a);
  for (const auto& arc : arcs_) {
    if (a.contains(arc.tail) && !a.contains(arc.head)) total += arc.capacity;
  }
  return total;
}

FlowNetwork CutFunction::build_network(std::span<const double> u, CapacityMode mode) const {
  if (u.size() != n_) throw ArgumentError("cut function: length mismatch");
  FlowNetwork net(n_, mode);
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    const auto& arc = arcs_[k];
    // Consecutive opposite arcs share one residual pair.
    if (k + 1 < arcs_.size() && arcs_[k + 1].tail == arc.head && arcs_[k + 1].head == arc.tail) {
      net.add_edge(arc.tail, arc.head, arc.capacity, arcs_[k + 1].capacity);
      ++k;
    } else {
      net.add_edge(arc.tail, arc.head, arc.capacity, 0.0);
    }
  }
  for (std::size_t j = 0; j < n_; ++j) {
    const double theta = modular_[j] - u[j];
    if (theta >= 0.0) {
      net.add_terminal(j, 0.0, theta);
    } else {
      net.add_terminal(j, -theta, 0.0);
      net.add_constant(theta);
    }
  }
  return net;
}

DiscreteMinimum CutFunction::minimize_with(std::span<const double> u, FlowAlgorithm algorithm,
                                           CapacityMode mode) const {
  const FlowNetwork net = build_network(u, mode);
  MaxFlowResult flow = max_flow(net, algorithm);
  DiscreteMinimum out;
  out.set = std::move(flow.source_side);
  out.value = evaluate(out.set) - modular_sum(u, out.set);
  out.certificate.source = BaseSource::kFlow;
  out.certificate.s = modular_;
  for (std::size_t j = 0; j < n_; ++j) out.certificate.s[j] += flow.certificate.net_outflow[j];
  return out;
}

DiscreteMinimum CutFunction::minimize(std::span<const double> u) const {
  return minimize_with(u, FlowAlgorithm::kSearchTrees);
}

std::unique_ptr<SetFunction> CutFunction::contract(const Subset& anchor,
                                                   const Subset& keep) const {
  if (anchor.universe_size() != n_ || keep.universe_size() != n_) {
    throw ArgumentError("contract: subset size mismatch");
  }
  if (!anchor.is_subset_of(keep)) throw ArgumentError("contract: anchor not within keep");
  constexpr std::size_t kOut = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n_, kOut);
  std::size_t m = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    if (keep.contains(j) && !anchor.contains(j)) index[j] = m++;
  }
  std::vector<double> modular(m, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    if (index[j] != kOut) modular[index[j]] = modular_[j];
  }
  std::vector<CutArc> arcs;
  for (const auto& arc : arcs_) {
    const std::size_t p = index[arc.tail];
    const std::size_t q = index[arc.head];
    if (p != kOut && q != kOut) {
      arcs.push_back({p, q, arc.capacity});
    } else if (p != kOut && !keep.contains(arc.head)) {
      modular[p] += arc.capacity;  // head stays outside: always cut
    } else if (q != kOut && anchor.contains(arc.tail)) {
      modular[q] -= arc.capacity;  // joining q stops paying the anchor's arc
    }
  }
  return std::make_unique<CutFunction>(m, std::move(arcs), std::move(modular), label_);
}

std::vector<double> CutFunction::greedy_base(std::span<const std::size_t> order) const {
  if (order.size() != n_) throw ArgumentError("greedy_base: order length mismatch");
  std::vector<std::size_t> rank(n_);
  for (std::size_t k = 0; k < n_; ++k) rank[order[k]] = k;
  std::vector<double> s = modular_;
  // An arc p->q is paid between the insertions of p and q when p comes first.
  for (const auto& arc : arcs_) {
    if (rank[arc.tail] < rank[arc.head]) {
      s[arc.tail] += arc.capacity;
      s[arc.head] -= arc.capacity;
    }
  }
  return s;
}

}  // namespace sfm
