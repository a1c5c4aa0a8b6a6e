#include "congest/grid.hpp"

#include <doctest.h>

using namespace congest;

TEST_CASE("periodic ghosts wrap") {
  const Grid g = Grid::line(3);
  Field f(3);
  f << 1, 2, 3;
  const PaddedField p = fill_ghosts(f, g, 1, ghost_rule(g, Quantity::Density));
  CHECK(p(-1) == 3);
  CHECK(p(0) == 1);
  CHECK(p(2) == 3);
  CHECK(p(3) == 1);
}

TEST_CASE("wall ghosts mirror and flip the normal momentum") {
  const Grid g = Grid::line(3, BoundarySide::wall(), BoundarySide::wall());
  Field q(3);
  q << 0.5, 0.1, 0.2;
  Field rho(3);
  rho << 0.7, 0.8, 0.9;
  const PaddedField pq = fill_ghosts(q, g, 2, ghost_rule(g, Quantity::MomentumX));
  const PaddedField pr = fill_ghosts(rho, g, 2, ghost_rule(g, Quantity::Density));
  CHECK(pq(-1) == -0.5);
  CHECK(pq(-2) == -0.1);
  CHECK(pq(3) == -0.2);
  CHECK(pr(-1) == 0.7);
  CHECK(pr(4) == 0.8);
}

TEST_CASE("dirichlet ghosts hold the exterior state") {
  const ExteriorState left{0.7, 0.8, 0.0, 0.7 / 1.2};
  const ExteriorState right{0.7, -0.8, 0.0, 0.7};
  const Grid g = Grid::line(4, BoundarySide::dirichlet(left), BoundarySide::dirichlet(right));
  const Field zero = Field::Zero(4);
  const PaddedField q = fill_ghosts(zero, g, 2, ghost_rule(g, Quantity::MomentumX));
  CHECK(q(-1) == 0.8);
  CHECK(q(-2) == 0.8);
  CHECK(q(4) == -0.8);
  const PaddedField rs = fill_ghosts(zero, g, 1, ghost_rule(g, Quantity::CongestionDensity));
  CHECK(rs(-1) == doctest::Approx(1.2));
  CHECK(rs(4) == doctest::Approx(1.0));
}

TEST_CASE("outflow window copies inside the window and reflects outside") {
  const Grid g = Grid::square(10, 4, {BoundarySide::wall(), BoundarySide::wall(),
                                      BoundarySide::outflow_window(0.4, 0.6), BoundarySide::wall()});
  GridState s = GridState::zeros(g);
  s.q[1].setConstant(-0.3);
  const PaddedField q2 = fill_ghosts(s.q[1], g, 1, ghost_rule(g, Quantity::MomentumY));
  CHECK(q2(4, -1) == -0.3);  // x = 0.45, inside the window
  CHECK(q2(5, -1) == -0.3);
  CHECK(q2(2, -1) == 0.3);   // wall part of the side
  CHECK(q2(4, 4) == 0.3);    // top wall
}

TEST_CASE("corner ghosts take the y rule applied after the x rule") {
  const Grid g = Grid::square(3, 3, {BoundarySide::wall(), BoundarySide::wall(), BoundarySide::wall(),
                                     BoundarySide::wall()});
  Field f(9);
  for (int c = 0; c < 9; ++c) f[c] = c;
  const PaddedField p = fill_ghosts(f, g, 1, ghost_rule(g, Quantity::MomentumX));
  // x-ghost of cell (0,0) is -0; the y rule then copies it to the corner.
  CHECK(p(-1, -1) == -f[g.index(0, 0)]);
  CHECK(p(3, 3) == -f[g.index(2, 2)]);
}

TEST_CASE("ghost width is validated") {
  const Grid g = Grid::line(2);
  CHECK_THROWS_AS(fill_ghosts(Field::Zero(2), g, 3, GhostRule{}), std::invalid_argument);
  CHECK_THROWS_AS(fill_ghosts(Field::Zero(3), g, 1, GhostRule{}), std::invalid_argument);
}

TEST_CASE("total mass and L1 error") {
  const Grid g = Grid::square(8, 8, {});
  GridState s = GridState::zeros(g);
  s.rho.setConstant(0.6);
  CHECK(total_mass(s, g) == doctest::Approx(0.6));
  s.rho *= 2.0;
  CHECK(total_mass(s, g) == doctest::Approx(1.2));
  const Grid line = Grid::line(16);
  const Field a = Field::LinSpaced(16, 0.0, 1.0);
  CHECK(l1_error(a, a, line) == 0.0);
  CHECK(l1_error(a, a + 0.25, line) == doctest::Approx(0.25));
}

TEST_CASE("density floor clamps and counts") {
  const Grid g = Grid::line(4);
  GridState s = GridState::zeros(g);
  s.rho << 1.0, 0.0, -1e-3, 0.5;
  CHECK(apply_density_floor(s) == 2);
  CHECK(s.rho.minCoeff() == kDensityFloor);
}

TEST_CASE("grid descriptions are validated") {
  CHECK_THROWS_AS(Grid::line(0), std::invalid_argument);
  CHECK_THROWS(Grid::square(4, 4, {BoundarySide::periodic(), BoundarySide::wall(), BoundarySide::periodic(),
                                   BoundarySide::periodic()}));
}
