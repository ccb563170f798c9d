#pragma once

#include <string>

#include "ppgossip/simnet/simulation.hpp"

namespace ppg::harness {

/// CSV with header step,i,j,bytes_round1,bytes_round2,max_dev.
std::string trace_csv(const simnet::SimulationTrace& tr);

/// Unmasked-vs-oracle differences, one line per diverging agent; empty when
/// the run matched. Reduction runs append the drift against the unreduced
/// oracle and its bound.
std::string oracle_diff(const simnet::SimulationTrace& tr);

/// lambda2 and T(eps) for eps = 0.05, 0.04, 0.03, 0.02, 0.01.
std::string spectral_report(const simnet::Topology& t);

/// Fixed-precision formatting used by every report.
std::string fmt(double v);

void write_file(const std::string& path, const std::string& content);

}  // namespace ppg::harness
