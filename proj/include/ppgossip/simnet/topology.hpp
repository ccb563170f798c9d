#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ppgossip/rng.hpp"

namespace ppg::simnet {

using Edge = std::pair<std::size_t, std::size_t>;  ///< first < second

/// Undirected simple graph on agents 0..N-1.
class Topology {
 public:
  Topology() = default;
  /// Throws std::invalid_argument on self-loops or out-of-range endpoints.
  /// Duplicate and reversed edges are merged.
  Topology(std::size_t n, const std::vector<Edge>& edges);

  std::size_t size() const { return neighbors_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_.at(i); }
  const std::vector<std::vector<std::size_t>>& neighbor_lists() const { return neighbors_; }
  bool adjacent(std::size_t i, std::size_t j) const;
  bool connected() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

Topology complete(std::size_t n);
Topology ring(std::size_t n);
Topology path(std::size_t n);
/// Points uniform in the unit square, joined when closer than `radius`.
/// Placements are redrawn until the graph is connected; throws
/// std::runtime_error after `max_attempts` failures.
Topology random_geometric(std::size_t n, double radius, Rng& rng, unsigned max_attempts = 1000);

/// Edge-list text: first token N, then pairs "i j" of 0-based indices.
/// '#' starts a comment. Throws DecodeError with the offending line.
Topology parse_edge_list(const std::string& text);
Topology load_edge_list(const std::string& path);

const std::vector<std::string>& preset_names();

struct PresetParams {
  std::size_t n = 0;
  double radius = 0.4;  ///< random_geometric only
};

/// Throws std::invalid_argument listing the known presets for unknown names.
Topology make_preset(const std::string& name, const PresetParams& p, Rng& rng);

}  // namespace ppg::simnet
