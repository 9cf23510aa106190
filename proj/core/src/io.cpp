#include "sweepfv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sweepfv/errors.hpp"

namespace sweepfv {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_vtk(const std::filesystem::path& path, const Mesh& mesh,
               std::span<const State> field, GasParams gas) {
  auto out = open_out(path);
  out << "# vtk DataFile Version 3.0\n"
      << "sweepfv steady state\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.node_count() << " double\n";
  for (const Vec2& p : mesh.nodes)
    out << fmt(p.x) << ' ' << fmt(p.y) << " 0\n";
  out << "CELLS " << mesh.cell_count() << ' ' << 4 * mesh.cell_count() << '\n';
  for (const auto& c : mesh.cells)
    out << "3 " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  out << "CELL_TYPES " << mesh.cell_count() << '\n';
  for (int i = 0; i < mesh.cell_count(); ++i) out << "5\n";

  out << "CELL_DATA " << mesh.cell_count() << '\n';
  const char* names[4] = {"rho", "u", "v", "p"};
  for (int a = 0; a < 4; ++a) {
    out << "SCALARS " << names[a] << " double 1\nLOOKUP_TABLE default\n";
    for (int i = 0; i < mesh.cell_count(); ++i) {
      Primitive w = to_primitive(field[static_cast<std::size_t>(i)], gas);
      double vals[4] = {w.rho, w.u, w.v, w.p};
      out << fmt(vals[a]) << '\n';
    }
  }
}

void write_residue_csv(const std::filesystem::path& path,
                       const IterationReport& report, double cfl,
                       Driver driver) {
  auto out = open_out(path);
  out << "iter,resA,dt,cfl,driver\n";
  for (std::size_t it = 0; it < report.history.size(); ++it) {
    const auto& rec = report.history[it];
    out << (it + 1) << ',' << fmt(rec.res_a) << ',' << fmt(rec.dt) << ','
        << fmt(cfl) << ',' << to_string(driver) << '\n';
  }
}

std::string summary_line(std::string_view case_id, Driver driver, double cfl,
                         const IterationReport& report) {
  std::ostringstream s;
  s << case_id << ' ' << to_string(driver) << ' ' << fmt(cfl) << ' '
    << report.iterations << ' ' << fmt(report.seconds) << ' '
    << (report.converged ? "true" : "false");
  return s.str();
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int no = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(no) + ": missing '='");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(no) + ": empty key");
    kv[key] = val;
  }
  return kv;
}

std::map<std::string, std::string> read_config(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace sweepfv
