#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sfm/subset.h"

namespace sfm {

enum class FlowAlgorithm {
  kSearchTrees,    // augmenting paths on reusable source/sink search trees
  kShortestPaths,  // BFS augmenting paths; slow, kept as a reference
};

enum class CapacityMode {
  kFloat,
  // Capacities are rounded to multiples of 2^-20 so that every flow update is
  // exact in double precision.
  kScaledInteger,
};

inline constexpr double kCapacityScale = 1048576.0;  // 2^20

// s-t network over `num_nodes` inner nodes plus implicit source and sink.
// Inner arcs are stored in pairs (a, a ^ 1) so residual bookkeeping is local.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t num_nodes, CapacityMode mode = CapacityMode::kFloat);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_arcs() const { return head_.size(); }

  // Adds p->q with capacity cap and q->p with capacity rev_cap.
  void add_edge(std::size_t p, std::size_t q, double cap, double rev_cap = 0.0);
  // Adds source->j with capacity to_node and j->sink with capacity to_sink.
  void add_terminal(std::size_t j, double from_source, double to_sink);
  // Constant added to every reported cut value.
  void add_constant(double c) { offset_ += c; }
  double offset() const { return offset_; }

  // Arc accessors; arcs 2k and 2k+1 form the k-th pair.
  std::size_t arc_tail(std::size_t a) const { return head_[a ^ 1U]; }
  std::size_t arc_head(std::size_t a) const { return head_[a]; }
  double arc_capacity(std::size_t a) const { return cap_[a]; }
  double source_capacity(std::size_t j) const { return source_cap_[j]; }
  double sink_capacity(std::size_t j) const { return sink_cap_[j]; }

 private:
  double quantize(double c) const;

  std::size_t num_nodes_;
  CapacityMode mode_;
  std::vector<std::size_t> head_;
  std::vector<double> cap_;
  std::vector<double> source_cap_;
  std::vector<double> sink_cap_;
  double offset_ = 0.0;
};

struct FlowCertificate {
  std::vector<double> arc_flow;      // per inner arc; arc a carries max(0, flow)
  std::vector<double> net_outflow;   // per inner node, over inner arcs only
  std::vector<double> source_flow;   // source->j
  std::vector<double> sink_flow;     // j->sink
};

struct MaxFlowResult {
  double flow_value = 0.0;  // excludes the network's constant offset
  Subset source_side;       // inner nodes reachable from the source in the residual graph
  FlowCertificate certificate;
};

MaxFlowResult max_flow(const FlowNetwork& net,
                       FlowAlgorithm algorithm = FlowAlgorithm::kSearchTrees);

// Capacity of the cut (source_side | {source}, rest | {sink}).
double cut_capacity(const FlowNetwork& net, const Subset& source_side);

}  // namespace sfm
