#include "congest/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

namespace congest {

FrameFormat parse_frame_format(const std::string& s) {
  if (s == "csv") return FrameFormat::Csv;
  if (s == "vtk") return FrameFormat::Vtk;
  throw std::invalid_argument("unknown frame format: " + s);
}

namespace {

std::ofstream open_for_writing(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  return out;
}

void write_csv(const GridState& s, const Grid& g, std::ofstream& out) {
  out << (g.dim == 2 ? "x,y,rho,q1,q2,Z,rho_star\n" : "x,rho,q1,Z,rho_star\n");
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int c = g.index(i, j);
      out << g.x_center(i) << ',';
      if (g.dim == 2) out << g.y_center(j) << ',';
      out << s.rho[c] << ',' << s.q[0][c] << ',';
      if (g.dim == 2) out << s.q[1][c] << ',';
      out << s.Z[c] << ',' << s.rho_star[c] << '\n';
    }
  }
}

void write_vtk(const GridState& s, const Grid& g, std::ofstream& out) {
  out << "# vtk DataFile Version 3.0\n"
      << "congested Euler frame t=" << s.time << "\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << g.nx << ' ' << g.ny << " 1\n"
      << "ORIGIN " << 0.5 * g.dx << ' ' << (g.dim == 2 ? 0.5 * g.dy : 0.0) << " 0\n"
      << "SPACING " << g.dx << ' ' << (g.dim == 2 ? g.dy : 1.0) << " 1\n"
      << "POINT_DATA " << g.cells() << '\n';
  auto scalar = [&](const char* name, const Field& f) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (Eigen::Index c = 0; c < f.size(); ++c) out << f[c] << '\n';
  };
  scalar("rho", s.rho);
  scalar("q1", s.q[0]);
  if (g.dim == 2) scalar("q2", s.q[1]);
  scalar("Z", s.Z);
  scalar("rho_star", s.rho_star);
}

}  // namespace

void write_frame(const GridState& state, const Grid& grid, const std::string& path, FrameFormat format) {
  std::ofstream out = open_for_writing(path);
  if (format == FrameFormat::Csv) write_csv(state, grid, out);
  else write_vtk(state, grid, out);
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

GridState read_csv_frame(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::getline(in, line);
  const int coords = grid.dim;
  const int columns = grid.dim == 2 ? 7 : 5;
  GridState s = GridState::zeros(grid);
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= grid.cells()) throw IoError(path + ": more rows than grid cells");
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (static_cast<int>(v.size()) != columns) throw IoError(path + ": wrong column count");
    int k = coords;
    s.rho[row] = v[k++];
    s.q[0][row] = v[k++];
    if (grid.dim == 2) s.q[1][row] = v[k++];
    s.Z[row] = v[k++];
    s.rho_star[row] = v[k++];
    ++row;
  }
  if (row != grid.cells()) throw IoError(path + ": fewer rows than grid cells");
  return s;
}

}  // namespace congest
