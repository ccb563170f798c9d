#include "ppgossip/harness/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ppgossip/simnet/spectral.hpp"

namespace ppg::harness {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::string trace_csv(const simnet::SimulationTrace& tr) {
  std::ostringstream os;
  os << "step,i,j,bytes_round1,bytes_round2,max_dev\n";
  for (const auto& s : tr.steps)
    os << s.step << ',' << s.i << ',' << s.j << ',' << s.bytes_round1 << ',' << s.bytes_round2 << ',' << fmt(s.max_dev)
       << '\n';
  return os.str();
}

std::string oracle_diff(const simnet::SimulationTrace& tr) {
  std::ostringstream os;
  for (const auto& m : tr.mismatches)
    os << "step " << m.step << " agent " << m.agent << ": expected " << m.expected.numerator.get_str() << "/2^"
       << m.expected.denom_exp << ", unmasked " << m.actual.numerator.get_str() << "/2^" << m.actual.denom_exp << '\n';
  if (tr.reductions > 0 && tr.mismatches.empty()) {
    os << "reduction drift " << fmt(tr.max_reduction_drift) << " vs bound " << fmt(tr.drift_bound) << " over "
       << tr.reductions << " reductions: " << (tr.max_reduction_drift <= tr.drift_bound ? "approximate-pass" : "FAIL")
       << '\n';
  }
  return os.str();
}

std::string spectral_report(const simnet::Topology& t) {
  if (!t.connected()) throw std::invalid_argument("spectral: topology is disconnected");
  if (t.size() < 2) throw std::invalid_argument("spectral: at least two agents required");
  const double lam = simnet::lambda2(simnet::expected_w(t, simnet::uniform_pair_probs(t)));
  std::ostringstream os;
  os << "N " << t.size() << "\nedges " << t.edges().size() << "\nlambda2 " << fmt(lam) << '\n';
  for (int k = 5; k >= 1; --k) {
    const double eps = k / 100.0;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", eps);
    os << "T(" << buf << ") " << simnet::epsilon_averaging_T(eps, lam) << '\n';
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

}  // namespace ppg::harness
