#pragma once

#include <string>
#include <vector>

#include "dcs/invariants.hpp"
#include "dcs/solver.hpp"

namespace dcs {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// Trajectory persistence: one CSV row per (time, node) sample with header
// `t,x,rho,kappa`, doubles in shortest round-trip form so a reload is
// bit exact.  Readers throw std::runtime_error with a line diagnostic on
// malformed input.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

// Invariant report rows under header `t,m_bar,gamma,gamma_sq,ratio_sup,rho_xxx_sup`.
void write_invariant_csv(const std::string& path, const InvariantReport& report);

// Metadata sidecar (JSON): model/regularization parameters, grid shape and the
// producing command line, written next to a run artifact.
struct RunMeta {
  std::string command;
  ModelParams params;
  RegParams reg;
  int n_nodes = 0;
  double dt = 0.0;
  double t_end = 0.0;
  int states = 0;
  double final_dt = 0.0;
  int backoffs = 0;
};

void write_meta_json(const std::string& path, const RunMeta& meta);
RunMeta read_meta_json(const std::string& path);

}  // namespace dcs
