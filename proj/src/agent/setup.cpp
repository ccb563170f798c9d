#include "ppgossip/agent/setup.hpp"

#include <map>

namespace ppg::agent {

std::vector<std::pair<std::size_t, std::size_t>> required_rekeys(std::size_t self, std::size_t n_agents, KeyMode mode,
                                                                 const std::vector<std::size_t>& neighbors) {
  std::vector<std::size_t> peers;
  if (mode == KeyMode::dynamic) {
    for (std::size_t a = 0; a < n_agents; ++a)
      if (a != self) peers.push_back(a);
  } else {
    peers = neighbors;
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a : peers)
    for (std::size_t b : peers) out.emplace_back(a, b);
  return out;
}

std::vector<Agent> setup_agents(const std::vector<mpz_class>& inputs, const pre::EnvelopeCodec& codec,
                                const ModulusParams& mp, const ReductionParams& red, KeyMode mode,
                                const std::vector<std::vector<std::size_t>>& neighbors, Rng& rng) {
  const std::size_t n = inputs.size();
  if (mode == KeyMode::static_neighbors && neighbors.size() != n)
    throw std::invalid_argument("setup: static mode needs a neighbour list per agent");
  const pre::PreScheme& scheme = codec.scheme();

  std::vector<pre::KeyPair> keys;
  for (std::size_t i = 0; i < n; ++i) {
    Rng kr = rng.split("keygen", i);
    keys.push_back(scheme.keygen(kr));
  }
  std::vector<Agent> agents;
  agents.reserve(n);
  for (std::size_t i = 0; i < n; ++i) agents.emplace_back(i, keys[i], codec, mp, red, inputs[i]);

  // Each rk_{a->b} is computed once by a and handed to every proxy needing it.
  std::map<std::pair<std::size_t, std::size_t>, pre::ReEncryptionKey> issued;
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<std::size_t> empty;
    const auto& nb = mode == KeyMode::static_neighbors ? neighbors[i] : empty;
    for (const auto& [a, b] : required_rekeys(i, n, mode, nb)) {
      auto it = issued.find({a, b});
      if (it == issued.end()) it = issued.emplace(std::pair{a, b}, scheme.reenc_keygen(keys[a].sk, keys[b].pk)).first;
      agents[i].rekeys().put(a, b, it->second);
    }
  }
  return agents;
}

}  // namespace ppg::agent
