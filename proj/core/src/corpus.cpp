#include "dcs/corpus.hpp"

#include <cmath>
#include <cstdlib>

namespace dcs {

SpaceTimeField rho_xxx_field(int n_nodes, int n_t, double t_end) {
  const Grid grid = Grid::uniform(n_nodes);
  ModelParams params;
  params.epsilon = 1.0;
  params.tau = 0.5;
  const InitialData init = build_initial_data(params, 0.05, grid);
  StepperConfig cfg;
  cfg.dt = t_end / (64.0 * (n_t - 1));
  const Trajectory traj = solve(init, t_end, cfg, params);

  SpaceTimeField out(0.0, grid.h, n_nodes, 0.0, t_end / (n_t - 1), n_t);
  out.x1 = 1.0;
  size_t cursor = 0;
  for (int m = 0; m < n_t; ++m) {
    const double target = out.t(m);
    while (cursor + 1 < traj.states.size() &&
           std::abs(traj.states[cursor + 1].time - target) <=
               std::abs(traj.states[cursor].time - target))
      ++cursor;
    const ScalarField d3 = diff3(traj.states[cursor].rho);
    for (int i = 0; i < n_nodes; ++i) out.at(m, i) = d3[i];
  }
  return out;
}

std::vector<CorpusField> standard_corpus(int n_nodes, int n_t, double t_end) {
  const Grid grid = Grid::uniform(n_nodes);
  const double dt = t_end / (n_t - 1);
  const double pi = std::acos(-1.0);
  auto on = [&](const std::function<double(double, double)>& f) {
    return SpaceTimeField::sample(grid, 0.0, dt, n_t, f);
  };
  std::vector<CorpusField> corpus;
  corpus.push_back({"constant", on([](double, double) { return 1.0; })});
  corpus.push_back({"linear_x", on([](double x, double) { return x; })});
  corpus.push_back({"quadratic_x", on([](double x, double) { return x * x; })});
  corpus.push_back({"sine_x", on([pi](double x, double) { return std::sin(pi * x); })});
  corpus.push_back({"jump", on([](double x, double) { return x < 0.5 ? 1.0 : -1.0; })});
  corpus.push_back({"decaying_sine", on([pi](double x, double t) {
                      return std::exp(-t) * std::sin(pi * x);
                    })});
  for (double height : {1.0, 4.0, 16.0}) {
    const double width = 4.0 * height;  // sharper with height, fixed mass scale
    corpus.push_back({"bump_" + std::to_string(static_cast<int>(height)),
                      on([height, width](double x, double) {
                        const double u = width * (x - 0.5);
                        return height * std::exp(-u * u);
                      })});
  }
  corpus.push_back({"rho_xxx", rho_xxx_field(n_nodes, n_t, t_end)});
  return corpus;
}

std::vector<CorpusField> extension_corpus(int n_nodes, int n_t, double t_end) {
  const Grid grid = Grid::uniform(n_nodes);
  const double dt = t_end / (n_t - 1);
  const double pi = std::acos(-1.0);
  auto on = [&](const std::function<double(double, double)>& f) {
    return SpaceTimeField::sample(grid, 0.0, dt, n_t, f);
  };
  std::vector<CorpusField> corpus;
  corpus.push_back({"linear_x", on([](double x, double) { return x; })});
  corpus.push_back({"quadratic_x", on([](double x, double) { return x * x; })});
  corpus.push_back({"sine_x", on([pi](double x, double) { return std::sin(pi * x); })});
  corpus.push_back({"jump", on([](double x, double) { return x < 0.5 ? 1.0 : -1.0; })});
  return corpus;
}

}  // namespace dcs
