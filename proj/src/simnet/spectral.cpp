#include "ppgossip/simnet/spectral.hpp"

#include <cmath>

namespace ppg::simnet {

std::vector<double> uniform_pair_probs(const Topology& t) {
  if (t.edges().empty()) return {};
  return std::vector<double>(t.edges().size(), 1.0 / static_cast<double>(t.edges().size()));
}

Eigen::MatrixXd expected_w(const Topology& t, const std::vector<double>& p) {
  if (p.size() != t.edges().size()) throw std::invalid_argument("expected_w: one probability per edge required");
  double sum = 0;
  for (double x : p) {
    if (!(x >= 0)) throw std::invalid_argument("expected_w: negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("expected_w: probabilities must sum to 1");
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(t.edges()[k].first);
    const auto j = static_cast<Eigen::Index>(t.edges()[k].second);
    const double h = p[k] / 2;
    m(i, i) -= h;
    m(j, j) -= h;
    m(i, j) += h;
    m(j, i) += h;
  }
  return m;
}

double lambda2(const Eigen::MatrixXd& m, double tol, std::size_t max_iter) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("lambda2: square matrix required");
  if (n < 2) throw std::invalid_argument("lambda2: at least two agents required");
  const Eigen::MatrixXd shifted = m + Eigen::MatrixXd::Identity(n, n);

  // Fixed pseudo-random start so results are reproducible.
  Rng rng(0x5eed);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform_real() - 0.5;
  auto deflate = [](Eigen::VectorXd& x) { x.array() -= x.mean(); };
  deflate(v);
  v.normalize();

  for (std::size_t it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = shifted * v;
    deflate(w);
    const double mu = v.dot(w);
    if ((w - mu * v).norm() < tol) return mu - 1.0;
    const double norm = w.norm();
    if (norm == 0) return -1.0;  // M + I vanishes on the complement
    v = w / norm;
  }
  throw std::runtime_error("lambda2: power iteration did not converge");
}

std::size_t epsilon_averaging_T(double eps, double lam2) {
  if (!(eps > 0 && eps < 1)) throw std::domain_error("epsilon_averaging_T: eps must lie in (0, 1)");
  if (!(lam2 < 1)) throw std::domain_error("epsilon_averaging_T: lambda2 >= 1 (disconnected graph)");
  if (lam2 <= 0) return 1;
  const double bound = 3.0 * std::log(1.0 / eps) / std::log(1.0 / lam2);
  const double c = std::ceil(bound);
  return c < 1 ? 1 : static_cast<std::size_t>(c);
}

}  // namespace ppg::simnet
