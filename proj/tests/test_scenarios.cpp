#include "congest/io.hpp"
#include "congest/scenarios.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

using namespace congest;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "congest_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("Riemann initial data") {
  Scenario s = default_scenario(ScenarioKind::Riemann1d);
  s.nx = 10;
  const Grid g = make_grid(s);
  const GridState st = build_initial_state(s, g);
  CHECK(st.rho[0] == doctest::Approx(0.7));
  CHECK(st.q[0][0] == doctest::Approx(0.8));
  CHECK(st.rho_star[0] == doctest::Approx(1.2));
  CHECK(st.q[0][9] == doctest::Approx(-0.8));
  CHECK(st.Z[9] == doctest::Approx(0.7));
}

TEST_CASE("smooth initial data peaks at the centre") {
  Scenario s = default_scenario(ScenarioKind::Smooth1d);
  s.nx = 101;
  const Grid g = make_grid(s);
  const GridState st = build_initial_state(s, g);
  CHECK(st.rho[50] == doctest::Approx(0.8));
  CHECK(st.q[0][50] == doctest::Approx(1.0));
  CHECK(st.rho_star[50] == doctest::Approx(1.2));
}

TEST_CASE("evacuation room starts with mass 0.6") {
  Scenario s = default_scenario(ScenarioKind::Evacuate2d);
  s.nx = s.ny = 20;
  const Grid g = make_grid(s);
  CHECK(total_mass(build_initial_state(s, g), g) == doctest::Approx(0.6));
  s.profile = EvacuationProfile::Random;
  const GridState a = build_initial_state(s, g);
  const GridState b = build_initial_state(s, g);
  CHECK((a.rho_star - b.rho_star).abs().maxCoeff() == 0.0);
}

TEST_CASE("collision squares are symmetric under a quarter turn") {
  Scenario s = default_scenario(ScenarioKind::Collide2d);
  s.nx = s.ny = 16;
  const Grid g = make_grid(s);
  const GridState st = build_initial_state(s, g);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i) CHECK(st.rho[g.index(15 - j, i)] == st.rho[g.index(i, j)]);
}

TEST_CASE("invalid scenarios are rejected") {
  Scenario s = default_scenario(ScenarioKind::Riemann1d);
  s.nx = 0;
  CHECK_THROWS(s.validate());
  s = default_scenario(ScenarioKind::Riemann1d);
  s.config.time_order = 3;
  CHECK_THROWS(s.validate());
  s = default_scenario(ScenarioKind::Riemann1d);
  s.t_end = -1.0;
  CHECK_THROWS(s.validate());
  CHECK_THROWS(parse_scheme_kind("nope"));
}

TEST_CASE("convergence study against a run of itself has round-off error") {
  Scenario s = default_scenario(ScenarioKind::Smooth1d);
  s.t_end = 0.01;
  s.nx = 40;
  const ScenarioResult ref = run_scenario(s);
  const ConvergenceReport r = run_convergence_study(s, {10, 20, 40}, ref);
  for (const auto& e : r.errors) {
    CHECK(e[2] < 1e-15);
    CHECK(e[0] > 0.0);
  }
}

TEST_CASE("slope fit of an exact power law") {
  const std::vector<double> dx{0.1, 0.05, 0.025};
  const std::vector<double> err{3e-2, 7.5e-3, 1.875e-3};
  CHECK(fitted_slope(dx, err) == doctest::Approx(2.0));
}

TEST_CASE("run records one entry per step and conserves mass") {
  Scenario s = default_scenario(ScenarioKind::Smooth1d);
  s.nx = 50;
  s.t_end = 0.02;
  int calls = 0;
  const ScenarioResult r = run_scenario(s, [&](const GridState&, const Grid&, int) { ++calls; });
  CHECK(r.steps > 0);
  CHECK(static_cast<int>(r.times.size()) == r.steps + 1);
  CHECK(r.times.back() == doctest::Approx(0.02));
  CHECK(calls >= r.steps);
  CHECK(r.max_mass_drift < 1e-12);
}

TEST_CASE("CSV frames round-trip") {
  const Grid g = Grid::square(3, 2, {});
  GridState s = GridState::zeros(g);
  for (int c = 0; c < 6; ++c) {
    s.rho[c] = 0.1 * (c + 1) + 1e-13;
    s.q[0][c] = -0.05 * c;
    s.q[1][c] = 0.01 * c;
    s.Z[c] = 0.5 + 0.01 * c;
  }
  s.refresh_congestion_density();
  const auto path = scratch("frame.csv").string();
  write_frame(s, g, path, FrameFormat::Csv);
  const GridState back = read_csv_frame(path, g);
  CHECK((back.rho - s.rho).abs().maxCoeff() == 0.0);
  CHECK((back.q[1] - s.q[1]).abs().maxCoeff() == 0.0);
  CHECK((back.rho_star - s.rho_star).abs().maxCoeff() == 0.0);
}

TEST_CASE("CSV of a two cell line has a header and two rows") {
  const Grid g = Grid::line(2);
  GridState s = GridState::zeros(g);
  s.rho.setConstant(0.5);
  s.Z.setConstant(0.5);
  s.refresh_congestion_density();
  const auto path = scratch("two.csv").string();
  write_frame(s, g, path, FrameFormat::Csv);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 3);
  CHECK_THROWS_AS(read_csv_frame(path, Grid::line(3)), IoError);
}

TEST_CASE("VTK frames start with the legacy header") {
  const Grid g = Grid::square(2, 2, {});
  GridState s = GridState::zeros(g);
  s.rho.setConstant(0.5);
  s.Z.setConstant(0.5);
  s.refresh_congestion_density();
  const auto path = scratch("frame.vtk").string();
  write_frame(s, g, path, FrameFormat::Vtk);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("# vtk DataFile", 0) == 0);
  CHECK_THROWS_AS(write_frame(s, g, "/nonexistent/dir/f.vtk", FrameFormat::Vtk), IoError);
  CHECK(parse_frame_format("vtk") == FrameFormat::Vtk);
}
