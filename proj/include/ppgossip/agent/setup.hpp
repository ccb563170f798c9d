#pragma once

#include <vector>

#include "ppgossip/agent/agent.hpp"

namespace ppg::agent {

enum class KeyMode { dynamic, static_neighbors };

/// Keys an agent must hold: rk_{a->b} for every pair of other agents
/// (dynamic) or for pairs of its neighbours (static). Pairs with a == b are
/// the self-delegation keys. An agent never holds a key into itself.
std::vector<std::pair<std::size_t, std::size_t>> required_rekeys(std::size_t self, std::size_t n_agents, KeyMode mode,
                                                                 const std::vector<std::size_t>& neighbors);

/// Setup phase: key generation for every agent and distribution of the
/// re-encryption keys. rk_{a->b} is produced by agent a from its secret key and
/// b's public key. `neighbors[i]` is only consulted in static mode.
std::vector<Agent> setup_agents(const std::vector<mpz_class>& inputs, const pre::EnvelopeCodec& codec,
                                const ModulusParams& mp, const ReductionParams& red, KeyMode mode,
                                const std::vector<std::vector<std::size_t>>& neighbors, Rng& rng);

}  // namespace ppg::agent
