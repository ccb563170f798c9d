#pragma once

#include <optional>

#include "ppgossip/simnet/topology.hpp"

namespace ppg::simnet {

/// Randomized pair selection, uniform over admissible edges. An edge is not
/// admissible while its endpoints are each other's last partner. The rule is
/// suspended for two agents, and if it would exclude every edge all edges
/// become admissible again.
class GossipSchedule {
 public:
  GossipSchedule(Topology t, Rng rng);

  /// Selected edge (i < j); also records the pair as each endpoint's last partner.
  Edge random_pair();
  std::vector<Edge> admissible() const;
  /// Swaps the graph (dynamic networks); last-partner state is kept.
  void set_topology(Topology t);
  const Topology& topology() const { return topo_; }

 private:
  Topology topo_;
  Rng rng_;
  std::vector<std::optional<std::size_t>> last_;
};

}  // namespace ppg::simnet
