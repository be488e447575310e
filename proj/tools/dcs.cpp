#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcs/corpus.hpp"
#include "dcs/errors.hpp"
#include "dcs/initial_data.hpp"
#include "dcs/invariants.hpp"
#include "dcs/io.hpp"
#include "dcs/norms.hpp"
#include "dcs/solver.hpp"
#include "dcs/system.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string with_extension(const std::string& path, const char* ext) {
  std::filesystem::path p(path);
  p.replace_extension(ext);
  return p.string();
}

// ---- simulate ---------------------------------------------------------------

struct SimulateOpts {
  double epsilon = 1.0;
  double tau = 0.0;
  double amplitude = 0.05;
  int n = 201;
  double dt = 1e-3;
  double t_end = 1.0;
  double picard_tol = 1e-10;
  int max_iters = 50;
  std::string out = "run.csv";
};

int cmd_simulate(const SimulateOpts& o) {
  dcs::ModelParams params;
  params.epsilon = o.epsilon;
  params.tau = o.tau;
  const dcs::Grid grid = dcs::Grid::uniform(o.n);
  const dcs::InitialData init = dcs::build_initial_data(params, o.amplitude, grid);

  dcs::StepperConfig cfg;
  cfg.dt = o.dt;
  cfg.picard_tol = o.picard_tol;
  cfg.picard_max_iters = o.max_iters;

  dcs::SolveStats stats;
  dcs::Trajectory traj;
  try {
    traj = dcs::solve(init, o.t_end, cfg, params, &stats);
  } catch (const dcs::StepCollapse& e) {
    std::cerr << "step collapse: " << e.what() << "\n";
    return kExitVerification;
  }

  dcs::write_trajectory_csv(o.out, traj);
  dcs::RunMeta meta;
  meta.command = "simulate";
  meta.params = params;
  meta.reg = traj.reg;
  meta.n_nodes = o.n;
  meta.dt = o.dt;
  meta.t_end = o.t_end;
  meta.states = static_cast<int>(traj.states.size());
  meta.final_dt = stats.final_dt;
  meta.backoffs = stats.backoffs;
  dcs::write_meta_json(with_extension(o.out, ".meta.json"), meta);
  std::cout << "wrote " << o.out << " (" << traj.states.size() << " states, "
            << stats.backoffs << " backoffs)\n";
  return kExitOk;
}

// ---- verify -----------------------------------------------------------------

struct VerifyOpts {
  std::string trajectory;
  std::string out;
  double epsilon = kNaN;
  double tau = kNaN;
  double beta = 0.0;  // 0 = choose automatically
  double gamma_init = kNaN;
};

int cmd_verify(const VerifyOpts& o) {
  dcs::Trajectory traj = dcs::read_trajectory_csv(o.trajectory);

  dcs::ModelParams params;
  double gamma0 = kNaN;
  const std::string meta_path = with_extension(o.trajectory, ".meta.json");
  if (std::filesystem::exists(meta_path)) {
    const dcs::RunMeta meta = dcs::read_meta_json(meta_path);
    params = meta.params;
    gamma0 = meta.reg.gamma0;
  }
  if (!std::isnan(o.epsilon)) params.epsilon = o.epsilon;
  if (!std::isnan(o.tau)) params.tau = o.tau;
  traj.params = params;

  double gamma_init = o.gamma_init;
  if (std::isnan(gamma_init)) {
    if (!std::isnan(gamma0)) {
      gamma_init = gamma0 / 2.0;
    } else {
      // no metadata: floor from the discrete gradients of the first state
      const dcs::ScalarField kx = dcs::diff1(traj.states.front().kappa);
      const dcs::ScalarField rx = dcs::diff1(traj.states.front().rho);
      double min_sq = std::numeric_limits<double>::infinity();
      for (int i = 0; i < kx.size(); ++i)
        min_sq = std::min(min_sq, kx[i] * kx[i] - rx[i] * rx[i]);
      gamma_init = min_sq > 0.0 ? 0.45 * std::sqrt(min_sq) : 1e-12;
      gamma_init = std::min(gamma_init, 0.495);
    }
  }

  const double beta = o.beta > 0.0 ? o.beta : dcs::choose_beta(params);
  const dcs::MonitorParams mon = dcs::MonitorParams::make(beta, params);
  const std::vector<double> gamma = dcs::gamma_from_trajectory(traj, mon, gamma_init);
  const dcs::InvariantReport report = dcs::comparison_monitor(traj, mon, gamma);

  double res_max = 0.0;
  bool res_defined = true;
  try {
    for (size_t k = 1; k < traj.states.size(); ++k) {
      const dcs::ThetaPair th = dcs::to_theta(traj.states[k]);
      const dcs::ThetaPair th_prev = dcs::to_theta(traj.states[k - 1]);
      const double dt = traj.states[k].time - traj.states[k - 1].time;
      const auto res = dcs::residual_theta(th, th_prev, dt, params);
      res_max = std::max({res_max, dcs::linf_norm(res.first), dcs::linf_norm(res.second)});
    }
  } catch (const dcs::SingularDenominator&) {
    res_defined = false;
  }

  const std::string out =
      o.out.empty() ? with_extension(o.trajectory, ".invariants.csv") : o.out;
  dcs::write_invariant_csv(out, report);

  double min_m_bar = std::numeric_limits<double>::infinity();
  for (double v : report.m_bar) min_m_bar = std::min(min_m_bar, v);
  std::cout << "states " << report.times.size() << ", beta " << beta << ", gamma(0) "
            << gamma_init << ", gamma(end) " << gamma.back() << "\n";
  std::cout << "min weighted margin " << min_m_bar << ", max gradient ratio "
            << *std::max_element(report.ratio_sup.begin(), report.ratio_sup.end()) << "\n";
  if (res_defined)
    std::cout << "max theta residual " << res_max << "\n";
  else
    std::cout << "theta residual undefined: nonpositive density sum\n";
  std::cout << "violations " << report.violations.size() << ", report " << out << "\n";
  size_t shown = 0;
  for (const dcs::Violation& v : report.violations) {
    if (shown++ == 10) {
      std::cout << "  ...\n";
      break;
    }
    std::cout << "  t=" << v.time << " node=" << v.node << " " << v.quantity << "\n";
  }
  return report.violations.empty() && res_defined ? kExitOk : kExitVerification;
}

// ---- mms --------------------------------------------------------------------

struct MmsOpts {
  double epsilon = 1.0;
  double tau = 1.0;
  bool spatial_only = false;
  bool temporal_only = false;
  std::string out = "mms.json";
};

std::pair<dcs::ManufacturedField, dcs::ManufacturedField> default_manufactured_pair() {
  const double pi = std::acos(-1.0);
  dcs::ManufacturedField rho_star;
  rho_star.value = [pi](double x, double t) { return std::exp(-t) * std::sin(pi * x) / 10.0; };
  rho_star.ddt = [pi](double x, double t) { return -std::exp(-t) * std::sin(pi * x) / 10.0; };
  rho_star.ddx = [pi](double x, double t) {
    return std::exp(-t) * pi * std::cos(pi * x) / 10.0;
  };
  rho_star.d2dx = [pi](double x, double t) {
    return -std::exp(-t) * pi * pi * std::sin(pi * x) / 10.0;
  };
  dcs::ManufacturedField kappa_star;
  kappa_star.value = [pi](double x, double t) {
    return x + std::exp(-t) * std::sin(pi * x) / 20.0;
  };
  kappa_star.ddt = [pi](double x, double t) {
    return -std::exp(-t) * std::sin(pi * x) / 20.0;
  };
  kappa_star.ddx = [pi](double x, double t) {
    return 1.0 + std::exp(-t) * pi * std::cos(pi * x) / 20.0;
  };
  kappa_star.d2dx = [pi](double x, double t) {
    return -std::exp(-t) * pi * pi * std::sin(pi * x) / 20.0;
  };
  return {rho_star, kappa_star};
}

int cmd_mms(const MmsOpts& o) {
  dcs::ModelParams params;
  params.epsilon = o.epsilon;
  params.tau = o.tau;
  const auto [rho_star, kappa_star] = default_manufactured_pair();
  dcs::StepperConfig cfg;
  nlohmann::json j;
  j["epsilon"] = params.epsilon;
  j["tau"] = params.tau;
  double spatial_order = kNaN;

  auto table = [](const std::vector<dcs::MmsPoint>& pts) {
    nlohmann::json rows = nlohmann::json::array();
    for (const dcs::MmsPoint& p : pts)
      rows.push_back({{"n", p.n_nodes},
                      {"dt", p.dt},
                      {"err_rho", p.err_rho},
                      {"err_kappa", p.err_kappa}});
    return rows;
  };
  auto errs = [](const std::vector<dcs::MmsPoint>& pts) {
    std::vector<double> e;
    for (const dcs::MmsPoint& p : pts) e.push_back(std::max(p.err_rho, p.err_kappa));
    return e;
  };

  if (!o.temporal_only) {
    std::vector<std::pair<int, double>> ladder;
    std::vector<double> hs;
    for (int n : {51, 101, 201}) {
      const double h = 1.0 / (n - 1);
      ladder.push_back({n, h * h});
      hs.push_back(h);
    }
    const auto pts = dcs::solve_manufactured(rho_star, kappa_star, 0.25, cfg, params, ladder);
    spatial_order = dcs::observed_order(errs(pts), hs);
    j["spatial"] = table(pts);
    j["spatial_order"] = spatial_order;
    std::cout << "spatial order " << spatial_order << "\n";
  }
  if (!o.spatial_only) {
    std::vector<std::pair<int, double>> ladder;
    std::vector<double> dts;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
      ladder.push_back({201, dt});
      dts.push_back(dt);
    }
    const auto pts = dcs::solve_manufactured(rho_star, kappa_star, 1.0, cfg, params, ladder);
    const std::vector<double> e = errs(pts);
    j["temporal"] = table(pts);
    j["temporal_order"] = dcs::observed_order(e, dts);
    // paired-difference estimate, immune to a resolution-limited error floor
    j["temporal_order_paired"] = std::log2((e[0] - e[1]) / (e[1] - e[2]));
    std::cout << "temporal order " << j["temporal_order"] << " (paired "
              << j["temporal_order_paired"] << ")\n";
  }

  std::ofstream out(o.out);
  if (!out) throw std::runtime_error("cannot open for writing: " + o.out);
  out << j.dump(2) << '\n';
  std::cout << "wrote " << o.out << "\n";
  if (!o.temporal_only && !(spatial_order >= 1.8)) {
    std::cerr << "spatial order " << spatial_order << " below 1.8\n";
    return kExitVerification;
  }
  return kExitOk;
}

// ---- norms ------------------------------------------------------------------

struct NormsOpts {
  int n = 201;
  int n_t = 17;
  double t_end = 1.0;
  double p = 4.0;
  bool skip_extensions = false;
  std::string out = "norms.json";
};

int cmd_norms(const NormsOpts& o) {
  const double holder_order = 1.0 - 3.0 / o.p;
  const double sobolev_order = 2.0 - 2.0 / o.p;
  const auto corpus = dcs::standard_corpus(o.n, o.n_t, o.t_end);

  nlohmann::json j;
  j["n"] = o.n;
  j["n_t"] = o.n_t;
  j["t_end"] = o.t_end;
  j["p"] = o.p;
  j["holder_order"] = holder_order;
  j["sobolev_order"] = sobolev_order;
  nlohmann::json fields = nlohmann::json::array();
  double max_ratio = 0.0;
  for (const dcs::CorpusField& cf : corpus) {
    const dcs::KtComponents kt = dcs::kozono_taniuchi_ratio(cf.field);
    nlohmann::json e;
    e["name"] = cf.name;
    e["sup"] = kt.sup;
    e["bmo"] = kt.bmo;
    e["l1"] = kt.l1;
    e["w212"] = kt.w212;
    e["kt_ratio"] = kt.ratio();
    e["holder"] = dcs::holder_norm(cf.field, holder_order);
    std::vector<double> slice(cf.field.values.begin(), cf.field.values.begin() + cf.field.n_x);
    e["frac_sobolev"] = dcs::frac_sobolev_norm(slice, 0.0, 1.0, sobolev_order, o.p);
    if (!o.skip_extensions) {
      const dcs::SymAsymRelation rel = dcs::sym_asym_relation(cf.field);
      e["sym_bmo"] = rel.sym_bmo;
      e["asym_bmo"] = rel.asym_bmo;
      e["sym_mean_abs"] = rel.sym_mean_abs;
      e["c_emp"] = rel.c_emp();
    }
    max_ratio = std::max(max_ratio, kt.ratio());
    std::cout << cf.name << ": kt_ratio " << kt.ratio() << ", bmo " << kt.bmo << "\n";
    fields.push_back(std::move(e));
  }
  j["fields"] = std::move(fields);
  j["max_kt_ratio"] = max_ratio;
  std::cout << "max kt_ratio " << max_ratio << "\n";

  std::ofstream out(o.out);
  if (!out) throw std::runtime_error("cannot open for writing: " + o.out);
  out << j.dump(2) << '\n';
  std::cout << "wrote " << o.out << "\n";
  return kExitOk;
}

// ---- gamma ------------------------------------------------------------------

struct GammaOpts {
  double e_rate = 1.0;
  double gamma_init = 2.0 / std::exp(1.0);
  double t_end = 1.0;
  double dt = 1e-3;
  std::string out = "gamma.csv";
};

int cmd_gamma(const GammaOpts& o) {
  const dcs::GammaOdeResult res = dcs::gamma_log_ode(o.e_rate, o.gamma_init, o.t_end, o.dt);
  std::ofstream out(o.out);
  if (!out) throw std::runtime_error("cannot open for writing: " + o.out);
  out << "t,closed_form,rk4\n";
  for (size_t k = 0; k < res.times.size(); ++k)
    out << dcs::format_double(res.times[k]) << ',' << dcs::format_double(res.closed_form[k])
        << ',' << dcs::format_double(res.rk4[k]) << '\n';
  std::cout << "max closed-form/RK4 gap " << res.max_gap() << ", wrote " << o.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-difference simulator and certification suite for a singular "
               "coupled parabolic system on the unit channel"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* s = app.add_subcommand("simulate", "run the coupled solver and store a trajectory");
  s->add_option("--epsilon", sim.epsilon, "diffusion parameter (> 0)");
  s->add_option("--tau", sim.tau, "drift parameter");
  s->add_option("--amplitude", sim.amplitude, "sinusoid amplitude of the initial family");
  s->add_option("--n", sim.n, "number of grid nodes");
  s->add_option("--dt", sim.dt, "time step");
  s->add_option("--t-end", sim.t_end, "final time");
  s->add_option("--picard-tol", sim.picard_tol, "fixed-point gap tolerance");
  s->add_option("--max-iters", sim.max_iters, "fixed-point iteration budget");
  s->add_option("--out", sim.out, "trajectory CSV path");

  VerifyOpts ver;
  CLI::App* v = app.add_subcommand("verify", "check invariants of a stored trajectory");
  v->add_option("--trajectory", ver.trajectory, "trajectory CSV to verify")->required();
  v->add_option("--out", ver.out, "invariant report CSV path");
  v->add_option("--epsilon", ver.epsilon, "override diffusion parameter");
  v->add_option("--tau", ver.tau, "override drift parameter");
  v->add_option("--beta", ver.beta, "monitor weight exponent (0 = automatic)");
  v->add_option("--gamma-init", ver.gamma_init, "override the initial margin floor");

  MmsOpts mms;
  CLI::App* m = app.add_subcommand("mms", "manufactured-solution convergence ladders");
  m->add_option("--epsilon", mms.epsilon, "diffusion parameter (> 0)");
  m->add_option("--tau", mms.tau, "drift parameter");
  m->add_flag("--spatial-only", mms.spatial_only, "skip the temporal ladder");
  m->add_flag("--temporal-only", mms.temporal_only, "skip the spatial ladder");
  m->add_option("--out", mms.out, "JSON report path");

  NormsOpts nrm;
  CLI::App* n = app.add_subcommand("norms", "norm and inequality report over the corpus");
  n->add_option("--n", nrm.n, "number of grid nodes");
  n->add_option("--n-t", nrm.n_t, "number of time slices");
  n->add_option("--t-end", nrm.t_end, "slab length in time");
  n->add_option("--p", nrm.p, "integrability exponent for the order conventions");
  n->add_flag("--skip-extensions", nrm.skip_extensions, "skip the extension inequality");
  n->add_option("--out", nrm.out, "JSON report path");

  GammaOpts gam;
  CLI::App* g = app.add_subcommand("gamma", "margin-floor ODE: closed form vs RK4");
  g->add_option("--e-rate", gam.e_rate, "decay rate E");
  g->add_option("--gamma-init", gam.gamma_init, "initial value in (0,1)");
  g->add_option("--t-end", gam.t_end, "final time");
  g->add_option("--dt", gam.dt, "RK4 step");
  g->add_option("--out", gam.out, "CSV report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (s->parsed()) return cmd_simulate(sim);
    if (v->parsed()) return cmd_verify(ver);
    if (m->parsed()) return cmd_mms(mms);
    if (n->parsed()) return cmd_norms(nrm);
    if (g->parsed()) return cmd_gamma(gam);
  } catch (const dcs::ConstraintInfeasible& e) {
    std::cerr << "infeasible configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
