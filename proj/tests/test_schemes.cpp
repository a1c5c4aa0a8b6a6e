#include "congest/scheme_sl.hpp"
#include "congest/scheme_zq.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace congest;

namespace {

GridState uniform(const Grid& g, double rho, double q1, double q2, double z) {
  GridState s = GridState::zeros(g);
  s.rho.setConstant(rho);
  s.q[0].setConstant(q1);
  if (g.dim == 2) s.q[1].setConstant(q2);
  s.Z.setConstant(z);
  s.refresh_congestion_density();
  return s;
}

GridState random_periodic(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dens(0.2, 0.8), star(1.0, 1.5), mom(-0.5, 0.5);
  GridState s = GridState::zeros(g);
  for (int c = 0; c < g.cells(); ++c) {
    s.rho[c] = dens(rng);
    s.rho_star[c] = star(rng);
    s.q[0][c] = mom(rng);
    if (g.dim == 2) s.q[1][c] = mom(rng);
  }
  s.refresh_fraction();
  return s;
}

GridState step(bool semi_lagrangian, const GridState& s, const Grid& g, const SchemeConfig& cfg, double dt) {
  return semi_lagrangian ? step_sl(s, g, cfg, SemiLagConfig{1, cfg.time_order}, dt) : step_zq(s, g, cfg, dt);
}

SchemeConfig config(int order, double eps) {
  SchemeConfig cfg;
  cfg.space_order = order;
  cfg.time_order = order;
  cfg.law = PressureLawd(eps, 2.0, 2.0);
  return cfg;
}

}  // namespace

TEST_CASE("uniform states are fixed points of both schemes") {
  for (bool sl : {false, true}) {
    for (int order : {1, 2}) {
      for (int dim : {1, 2}) {
        const Grid g = dim == 1 ? Grid::line(20) : Grid::square(10, 10, {});
        const GridState s = uniform(g, 0.6, 0.2, -0.1, 0.75);
        const GridState n = step(sl, s, g, config(order, 1e-3), 1e-3);
        CHECK((n.rho - s.rho).abs().maxCoeff() < 1e-13);
        CHECK((n.q[0] - s.q[0]).abs().maxCoeff() < 1e-13);
        CHECK((n.Z - s.Z).abs().maxCoeff() < 1e-13);
      }
    }
  }
}

TEST_CASE("random periodic data: mass conserved and Z below one") {
  for (bool sl : {false, true}) {
    for (int order : {1, 2}) {
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Grid g = Grid::line(64);
        GridState s = random_periodic(g, seed);
        const SchemeConfig cfg = config(order, 1e-4);
        const double m0 = total_mass(s, g);
        for (int k = 0; k < 10; ++k) {
          const double dt = choose_time_step(s, g, cfg);
          s = step(sl, s, g, cfg, dt);
          CHECK(std::abs(total_mass(s, g) - m0) <= 1e-12 * m0);
          CHECK(s.rho.allFinite());
        }
        if (!sl) CHECK(s.Z.maxCoeff() < 1.0);
      }
    }
  }
}

TEST_CASE("mirror symmetry of a step") {
  for (bool sl : {false, true}) {
    for (int order : {1, 2}) {
      const int n = 48;
      const Grid g = Grid::line(n);
      const GridState s = random_periodic(g, 7);
      GridState m = s;
      for (int i = 0; i < n; ++i) {
        m.rho[i] = s.rho[n - 1 - i];
        m.q[0][i] = -s.q[0][n - 1 - i];
        m.Z[i] = s.Z[n - 1 - i];
        m.rho_star[i] = s.rho_star[n - 1 - i];
      }
      const SchemeConfig cfg = config(order, 1e-3);
      const GridState a = step(sl, s, g, cfg, 2e-3);
      const GridState b = step(sl, m, g, cfg, 2e-3);
      for (int i = 0; i < n; ++i) {
        CHECK(b.rho[i] == doctest::Approx(a.rho[n - 1 - i]).epsilon(1e-11));
        CHECK(b.q[0][i] == doctest::Approx(-a.q[0][n - 1 - i]).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("time step follows the CFL factor") {
  const Grid g = Grid::line(100);
  const GridState s = uniform(g, 0.5, 0.5, 0.0, 0.5);
  SchemeConfig cfg = config(1, 1e-2);
  const double c = max_background_speed(s, g, cfg.law);
  CHECK(c == doctest::Approx(1.0 + 0.5 * std::sqrt(2.0 / 0.5)));
  CHECK(choose_time_step(s, g, cfg) == doctest::Approx(cfg.cfl_factor * g.dx));
  cfg.adaptive_dt = true;
  CHECK(choose_time_step(s, g, cfg) == doctest::Approx(cfg.cfl_factor * g.dx / c));
}

TEST_CASE("relaxation update") {
  const Grid g = Grid::square(4, 4, {BoundarySide::wall(), BoundarySide::wall(), BoundarySide::wall(),
                                     BoundarySide::wall()});
  const double dt = 0.05;
  RelaxationConfig rc;
  rc.beta = dt;
  rc.desired = [](double, double) { return std::array<double, 2>{0.0, -1.0}; };
  const std::array<Field, 2> qs{Field::Constant(16, 0.2), Field::Constant(16, 0.4)};
  const Field rho = Field::Constant(16, 0.6);
  const auto q = relaxation_update(qs, rho, g, rc, dt);
  CHECK(q[0][5] == doctest::Approx(0.1));
  CHECK(q[1][5] == doctest::Approx((0.4 - 0.6) / 2));
  rc.beta = 1e12;
  CHECK(relaxation_update(qs, rho, g, rc, dt)[1][5] == doctest::Approx(0.4));
  rc.beta = 1e-12;
  CHECK(relaxation_update(qs, rho, g, rc, dt)[1][5] == doctest::Approx(-0.6));
}

TEST_CASE("desired direction points at the exit with unit length") {
  const RelaxationConfig rc = RelaxationConfig::toward(0.5, 0.0, 0.1);
  const auto w = rc.desired(0.5, 0.4);
  CHECK(w[0] == doctest::Approx(0.0));
  CHECK(w[1] == doctest::Approx(-1.0));
  const auto d = rc.desired(0.2, 0.7);
  CHECK(std::hypot(d[0], d[1]) == doctest::Approx(1.0));
}
