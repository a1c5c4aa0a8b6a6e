#include "congest/fluxes.hpp"

#include <doctest.h>

#include <cmath>

using namespace congest;

TEST_CASE("minmod") {
  CHECK(minmod(1.0, 2.0) == 1.0);
  CHECK(minmod(-3.0, -2.0) == -2.0);
  CHECK(minmod(1.0, -1.0) == 0.0);
  CHECK(minmod(0.0, 5.0) == 0.0);
}

TEST_CASE("rusanov diffusion") {
  CHECK(rusanov_diffusion(1.0, 3.0, 2.0) == 2.0);
  CHECK(rusanov_diffusion(3.0, 3.0, 7.0) == 0.0);
}

TEST_CASE("face speed of the colliding-stream data") {
  const PressureLawd law(1e-2, 2.0, 2.0);
  const FaceSideState l{0.7, 0.8, 0.0, 0.7 / 1.2};
  const FaceSideState r{0.7, -0.8, 0.0, 0.7};
  const double expected = 0.8 / 0.7 + 0.7 * std::sqrt(2.0 / 0.7);
  CHECK(max_char_speed(l, r, law) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(max_char_speed(r, l, law) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("MUSCL reconstruction is exact on linear data away from walls") {
  const Grid g = Grid::line(10, BoundarySide::wall(), BoundarySide::wall());
  Field w(10);
  for (int i = 0; i < 10; ++i) w[i] = 2.0 * i;
  const PaddedField p = fill_ghosts(w, g, 2, GhostRule{});
  const MusclValues m2 = muscl_reconstruct(p, g, 0, 2);
  for (int i = 1; i < 9; ++i) {
    CHECK(m2.at_right_face(i) == doctest::Approx(2.0 * i + 1.0));
    CHECK(m2.at_left_face(i) == doctest::Approx(2.0 * i - 1.0));
  }
  const MusclValues m1 = muscl_reconstruct(p, g, 0, 1);
  for (int i = 0; i < 10; ++i) CHECK(m1.at_right_face(i) == w[i]);
}

TEST_CASE("MUSCL slopes vanish at extrema") {
  const Grid g = Grid::line(6);
  Field w(6);
  w << 0, 1, 3, 1, 0, -1;
  const MusclValues m = muscl_reconstruct(fill_ghosts(w, g, 2, GhostRule{}), g, 0, 2);
  CHECK(m.at_right_face(2) == 3.0);
  CHECK(m.at_left_face(2) == 3.0);
}

TEST_CASE("uniform state has zero diffusion and the physical momentum flux") {
  const PressureLawd law(1e-2, 2.0, 2.0);
  const Grid g = Grid::square(6, 5, {});
  GridState s = GridState::zeros(g);
  s.rho.setConstant(0.5);
  s.q[0].setConstant(0.2);
  s.q[1].setConstant(-0.1);
  s.Z.setConstant(0.4);
  s.refresh_congestion_density();
  const ExplicitFluxes f = explicit_fluxes(fill_ghosts(s, g, 2), g, law, 2);
  const double p = background_pressure(0.4, law);
  CHECK(f.axes[0].D_rho.abs().maxCoeff() == 0.0);
  CHECK(f.axes[1].D_Z.abs().maxCoeff() == 0.0);
  CHECK(f.axes[0].G[0][0] == doctest::Approx(0.2 * 0.2 / 0.5 + p));
  CHECK(f.axes[0].G[1][0] == doctest::Approx(0.2 * -0.1 / 0.5));
  CHECK(f.axes[1].G[1][0] == doctest::Approx(0.1 * 0.1 / 0.5 + p));
  CHECK(face_divergence(f, g, [](const AxisFluxes& a) -> const Field& { return a.G[0]; }).abs().maxCoeff() < 1e-13);
}

TEST_CASE("centred operators on a periodic sine") {
  const int n = 64;
  const Grid g = Grid::line(n);
  Field u(n);
  for (int i = 0; i < n; ++i) u[i] = std::sin(2 * M_PI * g.x_center(i));
  const Field grad = centred_gradient(fill_ghosts(u, g, 1, GhostRule{}), g, 0);
  const double factor = std::sin(2 * M_PI / n) / g.dx;  // exact symbol of the centred difference
  for (int i = 0; i < n; ++i) CHECK(grad[i] == doctest::Approx(factor * std::cos(2 * M_PI * g.x_center(i))).epsilon(1e-12));
}
