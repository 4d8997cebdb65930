#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sfm/maxflow.h"
#include "sfm/set_function.h"

namespace sfm {

// Directed arc: pay `capacity` when tail is in A and head is not.
struct CutArc {
  std::size_t tail = 0;
  std::size_t head = 0;
  double capacity = 0.0;
};

// F(A) = sum of capacities of arcs leaving A, plus modular(A).
// Minimized by one max-flow per oracle call; the certificate is read off the
// flow: s_j = modular_j + net inner outflow of j.
class CutFunction final : public SetFunction {
 public:
  CutFunction(std::size_t n, std::vector<CutArc> arcs, std::vector<double> modular,
              std::string label = "cut");

  // Undirected edge {p, q} of weight w as the two arcs p->q and q->p.
  static CutFunction from_edges(std::size_t n,
                                std::span<const std::pair<std::size_t, std::size_t>> edges,
                                std::span<const double> weights, std::vector<double> modular,
                                std::string label = "cut");

  std::size_t size() const override { return n_; }
  double evaluate(const Subset& a) const override;
  DiscreteMinimum minimize(std::span<const double> u) const override;
  std::unique_ptr<SetFunction> contract(const Subset& anchor,
                                        const Subset& keep) const override;
  std::vector<double> greedy_base(std::span<const std::size_t> order) const override;
  std::string name() const override { return label_; }

  const std::vector<CutArc>& arcs() const { return arcs_; }
  const std::vector<double>& modular() const { return modular_; }

  // Min-cut network for argmin F(A) - u(A): theta_j = modular_j - u_j becomes
  // j->sink (theta >= 0) or source->j plus constant theta (theta < 0).
  FlowNetwork build_network(std::span<const double> u,
                            CapacityMode mode = CapacityMode::kFloat) const;

  DiscreteMinimum minimize_with(std::span<const double> u, FlowAlgorithm algorithm,
                                CapacityMode mode = CapacityMode::kFloat) const;

 private:
  std::size_t n_;
  std::vector<CutArc> arcs_;
  std::vector<double> modular_;
  std::string label_;
  // CSR adjacency: arcs leaving / entering each node.
  std::vector<std::size_t> out_begin_, out_arcs_, in_begin_, in_arcs_;
};

}  // namespace sfm
