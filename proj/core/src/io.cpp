#include "dcs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace dcs {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& token, const std::string& path, size_t line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw std::runtime_error(path + ":" + std::to_string(line) + ": bad number '" + token + "'");
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string read_line_trimmed(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  if (traj.states.empty()) throw std::invalid_argument("write_trajectory_csv: empty trajectory");
  std::ofstream out = open_out(path);
  out << "t,x,rho,kappa\n";
  const Grid& g = traj.grid();
  for (const StatePair& st : traj.states) {
    const std::string t_str = format_double(st.time);
    for (int i = 0; i < g.n_nodes; ++i)
      out << t_str << ',' << format_double(g.node(i)) << ',' << format_double(st.rho[i])
          << ',' << format_double(st.kappa[i]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Trajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  if (read_line_trimmed(in) != "t,x,rho,kappa")
    throw std::runtime_error(path + ":1: expected header t,x,rho,kappa");

  struct Row {
    double t, x, rho, kappa;
  };
  std::vector<Row> rows;
  size_t line_no = 1;
  while (in) {
    const std::string line = read_line_trimmed(in);
    ++line_no;
    if (line.empty()) {
      if (in.eof()) break;
      continue;
    }
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 4)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 4 columns");
    rows.push_back({parse_double(f[0], path, line_no), parse_double(f[1], path, line_no),
                    parse_double(f[2], path, line_no), parse_double(f[3], path, line_no)});
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");

  size_t n = 1;
  while (n < rows.size() && rows[n].t == rows[0].t) ++n;
  if (n < 5 || rows.size() % n != 0)
    throw std::runtime_error(path + ": inconsistent block structure");
  const Grid grid = Grid::uniform(static_cast<int>(n));

  Trajectory traj;
  for (size_t b = 0; b < rows.size() / n; ++b) {
    StatePair st;
    st.rho = ScalarField(grid);
    st.kappa = ScalarField(grid);
    st.time = rows[b * n].t;
    for (size_t i = 0; i < n; ++i) {
      const Row& row = rows[b * n + i];
      if (row.t != st.time)
        throw std::runtime_error(path + ": ragged time block at t=" + format_double(st.time));
      if (std::abs(row.x - grid.node(static_cast<int>(i))) > 1e-9)
        throw std::runtime_error(path + ": node positions are not a uniform grid on [0,1]");
      st.rho[static_cast<int>(i)] = row.rho;
      st.kappa[static_cast<int>(i)] = row.kappa;
    }
    if (!traj.states.empty() && st.time <= traj.states.back().time)
      throw std::runtime_error(path + ": times do not increase");
    traj.states.push_back(std::move(st));
  }
  return traj;
}

void write_invariant_csv(const std::string& path, const InvariantReport& report) {
  std::ofstream out = open_out(path);
  out << "t,m_bar,gamma,gamma_sq,ratio_sup,rho_xxx_sup\n";
  for (size_t k = 0; k < report.times.size(); ++k)
    out << format_double(report.times[k]) << ',' << format_double(report.m_bar[k]) << ','
        << format_double(report.gamma[k]) << ','
        << format_double(report.gamma[k] * report.gamma[k]) << ','
        << format_double(report.ratio_sup[k]) << ',' << format_double(report.rho_xxx_sup[k])
        << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_meta_json(const std::string& path, const RunMeta& meta) {
  nlohmann::json j;
  j["command"] = meta.command;
  j["epsilon"] = meta.params.epsilon;
  j["tau"] = meta.params.tau;
  j["gamma0"] = meta.reg.gamma0;
  j["m0"] = meta.reg.m0;
  j["n_nodes"] = meta.n_nodes;
  j["dt"] = meta.dt;
  j["t_end"] = meta.t_end;
  j["states"] = meta.states;
  j["final_dt"] = meta.final_dt;
  j["backoffs"] = meta.backoffs;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

RunMeta read_meta_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  RunMeta meta;
  meta.command = j.value("command", std::string());
  meta.params.epsilon = j.value("epsilon", meta.params.epsilon);
  meta.params.tau = j.value("tau", meta.params.tau);
  meta.reg.gamma0 = j.value("gamma0", meta.reg.gamma0);
  meta.reg.m0 = j.value("m0", meta.reg.m0);
  meta.n_nodes = j.value("n_nodes", 0);
  meta.dt = j.value("dt", 0.0);
  meta.t_end = j.value("t_end", 0.0);
  meta.states = j.value("states", 0);
  meta.final_dt = j.value("final_dt", 0.0);
  meta.backoffs = j.value("backoffs", 0);
  return meta;
}

}  // namespace dcs
