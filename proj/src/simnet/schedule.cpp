#include "ppgossip/simnet/schedule.hpp"

#include <stdexcept>

namespace ppg::simnet {

GossipSchedule::GossipSchedule(Topology t, Rng rng) : topo_(std::move(t)), rng_(std::move(rng)), last_(topo_.size()) {}

void GossipSchedule::set_topology(Topology t) {
  if (t.size() != topo_.size()) throw std::invalid_argument("schedule: topology size cannot change");
  topo_ = std::move(t);
}

std::vector<Edge> GossipSchedule::admissible() const {
  if (topo_.size() <= 2) return topo_.edges();
  std::vector<Edge> out;
  for (const Edge& e : topo_.edges())
    if (!(last_[e.first] == e.second && last_[e.second] == e.first)) out.push_back(e);
  return out.empty() ? topo_.edges() : out;
}

Edge GossipSchedule::random_pair() {
  const std::vector<Edge> cand = admissible();
  if (cand.empty()) throw std::logic_error("schedule: topology has no edges");
  const Edge e = cand[rng_.uniform(cand.size())];
  last_[e.first] = e.second;
  last_[e.second] = e.first;
  return e;
}

}  // namespace ppg::simnet
