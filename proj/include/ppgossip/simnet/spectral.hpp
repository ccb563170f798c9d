#pragma once

#include <Eigen/Dense>

#include "ppgossip/simnet/topology.hpp"

namespace ppg::simnet {

/// Uniform selection probability over the edges of `t`.
std::vector<double> uniform_pair_probs(const Topology& t);

/// E[W] = sum_e p_e (I - (e_i - e_j)(e_i - e_j)^T / 2), with p aligned to
/// t.edges(). Throws std::invalid_argument when p is negative or does not sum to 1.
Eigen::MatrixXd expected_w(const Topology& t, const std::vector<double>& pair_probs);

/// Second-largest eigenvalue of a symmetric doubly stochastic matrix: power
/// iteration on M + I restricted to the complement of the all-ones vector,
/// stopped when the eigen-residual drops below `tol`. Throws
/// std::runtime_error after `max_iter` iterations, std::invalid_argument for N < 2.
double lambda2(const Eigen::MatrixXd& m, double tol = 1e-10, std::size_t max_iter = 1'000'000);

/// max(1, ceil(3 ln(1/eps) / ln(1/lam2))); 1 when lam2 <= 0. Throws
/// std::domain_error for lam2 >= 1 or eps outside (0, 1).
std::size_t epsilon_averaging_T(double eps, double lam2);

}  // namespace ppg::simnet
