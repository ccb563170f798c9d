#include "ppgossip/simnet/topology.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "ppgossip/bytes.hpp"

namespace ppg::simnet {

Topology::Topology(std::size_t n, const std::vector<Edge>& edges) : neighbors_(n) {
  std::set<Edge> uniq;
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::invalid_argument("topology: edge endpoint out of range");
    if (a == b) throw std::invalid_argument("topology: self-loops are not allowed");
    uniq.insert({std::min(a, b), std::max(a, b)});
  }
  edges_.assign(uniq.begin(), uniq.end());
  for (auto [a, b] : edges_) {
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

bool Topology::adjacent(std::size_t i, std::size_t j) const {
  const auto& nb = neighbors_.at(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

bool Topology::connected() const {
  if (size() <= 1) return true;
  std::vector<bool> seen(size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : neighbors_[v])
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
  }
  return count == size();
}

Topology complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Topology(n, e);
}

Topology ring(std::size_t n) {
  std::vector<Edge> e;
  if (n >= 2)
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Topology(n, e);
}

Topology path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Topology(n, e);
}

Topology random_geometric(std::size_t n, double radius, Rng& rng, unsigned max_attempts) {
  if (!(radius > 0)) throw std::invalid_argument("random_geometric: radius must be positive");
  for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::pair<double, double>> pts(n);
    for (auto& p : pts) p = {rng.uniform_real(), rng.uniform_real()};
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = pts[i].first - pts[j].first;
        const double dy = pts[i].second - pts[j].second;
        if (dx * dx + dy * dy < radius * radius) e.emplace_back(i, j);
      }
    Topology t(n, e);
    if (t.connected()) return t;
  }
  throw std::runtime_error("random_geometric: no connected placement found; increase the radius");
}

Topology parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long long> tok;
    long long v = 0;
    while (ls >> v) tok.push_back(v);
    if (!ls.eof()) throw DecodeError("edge list line " + std::to_string(lineno) + ": expected integers");
    if (tok.empty()) continue;
    if (!n) {
      if (tok.size() != 1 || tok[0] < 0) throw DecodeError("edge list line " + std::to_string(lineno) + ": expected agent count N");
      n = static_cast<std::size_t>(tok[0]);
      continue;
    }
    if (tok.size() != 2 || tok[0] < 0 || tok[1] < 0)
      throw DecodeError("edge list line " + std::to_string(lineno) + ": expected an edge 'i j'");
    const auto a = static_cast<std::size_t>(tok[0]);
    const auto b = static_cast<std::size_t>(tok[1]);
    if (a >= *n || b >= *n || a == b)
      throw DecodeError("edge list line " + std::to_string(lineno) + ": invalid edge for N=" + std::to_string(*n));
    edges.emplace_back(a, b);
  }
  if (!n) throw DecodeError("edge list: missing agent count");
  return Topology(*n, edges);
}

Topology load_edge_list(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open topology file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_edge_list(ss.str());
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"complete", "ring", "path", "random_geometric"};
  return names;
}

Topology make_preset(const std::string& name, const PresetParams& p, Rng& rng) {
  if (name == "complete") return complete(p.n);
  if (name == "ring") return ring(p.n);
  if (name == "path") return path(p.n);
  if (name == "random_geometric") return random_geometric(p.n, p.radius, rng);
  std::string list;
  for (const auto& s : preset_names()) list += (list.empty() ? "" : ", ") + s;
  throw std::invalid_argument("unknown topology preset '" + name + "' (known: " + list + ")");
}

}  // namespace ppg::simnet
