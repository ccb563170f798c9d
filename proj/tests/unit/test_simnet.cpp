#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <boost/math/distributions/chi_squared.hpp>
#include <map>

#include "ppgossip/simnet/simulation.hpp"
#include "ppgossip/simnet/spectral.hpp"

using namespace ppg;
using namespace ppg::simnet;

namespace {

// Connected random graph: a random spanning tree plus random extra edges.
Topology random_connected(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({rng.uniform(i), i});
  const std::size_t extra = rng.uniform(n * 2);
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t a = rng.uniform(n), b = rng.uniform(n);
    if (a != b) edges.push_back({std::min(a, b), std::max(a, b)});
  }
  return Topology(n, edges);
}

double dense_lambda2(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const auto& ev = es.eigenvalues();  // ascending
  return ev(ev.size() - 2);
}

SimulationConfig small_config(Topology t, std::uint64_t seed) {
  SimulationConfig c;
  Rng rng(seed);
  for (std::size_t i = 0; i < t.size(); ++i) {
    c.inputs.push_back(rng.uniform_bits(16));
    c.thresholds.push_back(rng.uniform_bits(16));
  }
  c.topology = std::move(t);
  c.seed = seed;
  c.steps = 25;
  c.label_bits = 80;
  return c;
}

}  // namespace

TEST(Topology, NormalisesEdges) {
  const Topology t(4, {{1, 0}, {0, 1}, {2, 3}, {3, 2}, {1, 2}});
  EXPECT_EQ(t.edges().size(), 3u);
  for (const Edge& e : t.edges()) EXPECT_LT(e.first, e.second);
  EXPECT_TRUE(t.adjacent(1, 0));
  EXPECT_FALSE(t.adjacent(0, 3));
  EXPECT_TRUE(t.connected());
  EXPECT_THROW(Topology(3, {{1, 1}}), std::invalid_argument);
  EXPECT_THROW(Topology(3, {{0, 3}}), std::invalid_argument);
  EXPECT_FALSE(Topology(4, {{0, 1}, {2, 3}}).connected());
}

TEST(Topology, Presets) {
  EXPECT_EQ(complete(5).edges().size(), 10u);
  EXPECT_EQ(ring(8).edges().size(), 8u);
  EXPECT_EQ(path(5).edges().size(), 4u);
  EXPECT_EQ(ring(2).edges().size(), 1u);
  Rng rng(1);
  const Topology g = random_geometric(20, 0.4, rng);
  EXPECT_EQ(g.size(), 20u);
  EXPECT_TRUE(g.connected());
  Rng r2(1);
  EXPECT_EQ(random_geometric(20, 0.4, r2).edges(), g.edges());
  Rng r3(2);
  EXPECT_THROW(random_geometric(30, 0.01, r3, 5), std::runtime_error);
}

TEST(Topology, UnknownPresetListsKnownOnes) {
  Rng rng(1);
  try {
    make_preset("hypercube", {8}, rng);
    FAIL();
  } catch (const std::invalid_argument& e) {
    const std::string m = e.what();
    for (const auto& p : preset_names()) EXPECT_NE(m.find(p), std::string::npos);
  }
}

TEST(Topology, EdgeListParsing) {
  const Topology t = parse_edge_list("# demo\n3\n0 1  # first\n\n1 2\n");
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(load_edge_list(std::string(PPG_TEST_DATA) + "/path5.txt").edges().size(), 4u);
  try {
    parse_edge_list("3\n0 1\n1 x\n");
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_edge_list("3\n0 5\n"), DecodeError);
  EXPECT_THROW(parse_edge_list(""), DecodeError);
}

TEST(Spectral, ExpectedWComplete3) {
  const Eigen::MatrixXd m = expected_w(complete(3), uniform_pair_probs(complete(3)));
  const Eigen::MatrixXd want = 0.5 * Eigen::MatrixXd::Identity(3, 3) + Eigen::MatrixXd::Constant(3, 3, 1.0 / 6.0);
  EXPECT_LT((m - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Spectral, ExpectedWSingleEdge) {
  const Eigen::MatrixXd m = expected_w(complete(2), {1.0});
  EXPECT_LT((m - Eigen::MatrixXd::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Spectral, DoublyStochasticAndSymmetric) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const Topology t = random_connected(2 + rng.uniform(11), rng);
    const Eigen::MatrixXd m = expected_w(t, uniform_pair_probs(t));
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.rows());
    EXPECT_LT((m * ones - ones).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((m.transpose() * ones - ones).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Spectral, ProbabilityChecks) {
  EXPECT_THROW(expected_w(path(3), {0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(expected_w(path(3), {1.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(expected_w(path(3), {1.0}), std::invalid_argument);
}

TEST(Spectral, Lambda2Examples) {
  EXPECT_NEAR(lambda2(expected_w(complete(3), uniform_pair_probs(complete(3)))), 0.5, 1e-10);
  EXPECT_NEAR(lambda2(expected_w(complete(2), {1.0})), 0.0, 1e-10);
  EXPECT_NEAR(lambda2(Eigen::MatrixXd::Identity(4, 4)), 1.0, 1e-10);
  EXPECT_THROW(lambda2(Eigen::MatrixXd::Identity(1, 1)), std::invalid_argument);
}

TEST(Spectral, Lambda2MatchesDenseEigensolver) {
  Rng rng(3);
  for (int k = 0; k < 60; ++k) {
    const Topology t = random_connected(2 + rng.uniform(11), rng);
    const Eigen::MatrixXd m = expected_w(t, uniform_pair_probs(t));
    EXPECT_NEAR(lambda2(m), dense_lambda2(m), 1e-8) << "N=" << t.size() << " edges=" << t.edges().size();
  }
}

TEST(Spectral, EpsilonAveragingTime) {
  // 3 ln(100) / ln(2) = 19.93...
  EXPECT_EQ(epsilon_averaging_T(0.01, 0.5), static_cast<std::size_t>(std::ceil(3 * std::log(100.0) / std::log(2.0))));
  EXPECT_EQ(epsilon_averaging_T(0.01, 0.5), 20u);
  EXPECT_EQ(epsilon_averaging_T(0.5, 0.5), 3u);
  EXPECT_EQ(epsilon_averaging_T(0.999999, 0.5), 1u);
  EXPECT_EQ(epsilon_averaging_T(0.01, 0.0), 1u);
  EXPECT_EQ(epsilon_averaging_T(0.01, -0.2), 1u);
  EXPECT_THROW(epsilon_averaging_T(0.01, 1.0), std::domain_error);
  EXPECT_THROW(epsilon_averaging_T(0.0, 0.5), std::domain_error);
  EXPECT_THROW(epsilon_averaging_T(1.0, 0.5), std::domain_error);
  for (double lam : {0.3, 0.7, 0.95})
    EXPECT_GE(epsilon_averaging_T(0.01, lam), epsilon_averaging_T(0.05, lam));
}

TEST(Schedule, TwoAgentsAlwaysTheEdge) {
  GossipSchedule s(complete(2), Rng(4));
  for (int i = 0; i < 20; ++i) EXPECT_EQ(s.random_pair(), (Edge{0, 1}));
}

TEST(Schedule, PathAdmissibleSets) {
  GossipSchedule s(path(3), Rng(5));
  EXPECT_EQ(s.admissible().size(), 2u);
  Edge first = s.random_pair();
  const Edge other = first == Edge{0, 1} ? Edge{1, 2} : Edge{0, 1};
  EXPECT_EQ(s.admissible(), std::vector<Edge>{other});
  for (int i = 0; i < 20; ++i) {
    const Edge e = s.random_pair();
    EXPECT_NE(e, first);
    first = e;
  }
}

TEST(Schedule, NeverRepeatsWhileAlternativesExist) {
  Rng rng(6);
  const Topology t = random_connected(7, rng);
  GossipSchedule s(t, Rng(7));
  std::vector<std::optional<std::size_t>> last(7);
  for (int k = 0; k < 500; ++k) {
    const Edge e = s.random_pair();
    EXPECT_TRUE(t.adjacent(e.first, e.second));
    EXPECT_FALSE(last[e.first] == e.second && last[e.second] == e.first);
    last[e.first] = e.second;
    last[e.second] = e.first;
  }
}

TEST(Schedule, UniformOverEdgesOnK4) {
  GossipSchedule s(complete(4), Rng(8));
  std::map<Edge, double> counts;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) counts[s.random_pair()] += 1;
  ASSERT_EQ(counts.size(), 6u);
  const double expected = draws / 6.0;
  double chi2 = 0;
  for (const auto& [e, c] : counts) {
    chi2 += (c - expected) * (c - expected) / expected;
    // Within 3 sigma of a binomial count.
    EXPECT_LT(std::abs(c - expected), 3 * std::sqrt(draws * (1.0 / 6) * (5.0 / 6)));
  }
  EXPECT_LT(chi2, boost::math::quantile(boost::math::complement(boost::math::chi_squared(5), 0.001)));
}

TEST(Simulation, MatchesOracleOnSmallGraphs) {
  for (const Topology& t : {complete(3), ring(5), path(4)}) {
    const SimulationTrace tr = run_simulation(small_config(t, 10 + t.size()));
    EXPECT_TRUE(tr.mismatches.empty());
    EXPECT_EQ(tr.mean_violations, 0u);
    EXPECT_EQ(tr.view_exposures, 0u);
    EXPECT_FALSE(tr.wrapped);
    EXPECT_EQ(tr.steps.size(), 25u);
    for (const auto& d : tr.decisions) {
      EXPECT_EQ(d.result, d.expected);
      if (d.garbler_result) {
        EXPECT_EQ(*d.garbler_result, *d.garbler_expected);
      }
    }
  }
}

TEST(Simulation, DefaultStepCountFromBound) {
  SimulationConfig c = small_config(complete(3), 4);
  c.steps.reset();
  const SimulationTrace tr = run_simulation(c);
  EXPECT_NEAR(*tr.lambda2, 0.5, 1e-10);
  EXPECT_EQ(tr.steps.size(), 20u);
}

TEST(Simulation, SingleAgent) {
  SimulationConfig c;
  c.topology = Topology(1, {});
  c.inputs = {mpz_class(100)};
  c.thresholds = {mpz_class(200)};
  const SimulationTrace tr = run_simulation(c);
  EXPECT_TRUE(tr.steps.empty());
  ASSERT_EQ(tr.decisions.size(), 1u);
  EXPECT_FALSE(tr.decisions[0].garbler.has_value());
  EXPECT_TRUE(tr.decisions[0].result);
}

TEST(Simulation, IdenticalInputsStayAtConsensus) {
  SimulationConfig c = small_config(ring(6), 5);
  c.inputs.assign(6, mpz_class(777));
  const SimulationTrace tr = run_simulation(c);
  for (const auto& s : tr.steps) EXPECT_EQ(s.max_dev, 0.0);
  EXPECT_EQ(tr.final_l2_dev, 0.0);
}

TEST(Simulation, ReplayIsDeterministic) {
  const SimulationConfig c = small_config(ring(5), 6);
  const SimulationTrace a = run_simulation(c), b = run_simulation(c);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t k = 0; k < a.steps.size(); ++k) {
    EXPECT_EQ(a.steps[k].i, b.steps[k].i);
    EXPECT_EQ(a.steps[k].j, b.steps[k].j);
    EXPECT_EQ(a.steps[k].bytes_round1, b.steps[k].bytes_round1);
    EXPECT_EQ(a.steps[k].bytes_round2, b.steps[k].bytes_round2);
  }
  EXPECT_EQ(a.final_values, b.final_values);
}

TEST(Simulation, StaticKeysSufficeOnFixedGraph) {
  SimulationConfig c = small_config(ring(6), 7);
  c.key_mode = agent::KeyMode::static_neighbors;
  const SimulationTrace tr = run_simulation(c);
  EXPECT_TRUE(tr.mismatches.empty());
  for (std::size_t k : tr.cross_keys) EXPECT_EQ(k, 2u);
}

TEST(Simulation, DynamicTopologyChanges) {
  SimulationConfig c = small_config(ring(6), 8);
  c.topology_changes = {{10, complete(6)}, {18, path(6)}};
  const SimulationTrace tr = run_simulation(c);
  EXPECT_TRUE(tr.mismatches.empty());
  for (std::size_t k = 17; k < tr.steps.size(); ++k)
    EXPECT_EQ(tr.steps[k].j, tr.steps[k].i + 1);  // path edges only
  c.key_mode = agent::KeyMode::static_neighbors;
  EXPECT_THROW(run_simulation(c), std::invalid_argument);
}

TEST(Simulation, FaultIsDetectedAtInjectionStep) {
  SimulationConfig c = small_config(complete(4), 9);
  c.fault_step = 6;
  const SimulationTrace tr = run_simulation(c);
  ASSERT_FALSE(tr.mismatches.empty());
  EXPECT_EQ(tr.mismatches.front().step, 6u);
}

TEST(Simulation, RejectsBadConfigs) {
  SimulationConfig c = small_config(Topology(4, {{0, 1}, {2, 3}}), 1);
  EXPECT_THROW(run_simulation(c), std::invalid_argument);
  SimulationConfig d = small_config(complete(3), 1);
  d.inputs.pop_back();
  EXPECT_THROW(run_simulation(d), std::invalid_argument);
  SimulationConfig e = small_config(complete(3), 1);
  e.inputs[0] = mpz_class(1) << 16;
  EXPECT_THROW(run_simulation(e), std::invalid_argument);
}
