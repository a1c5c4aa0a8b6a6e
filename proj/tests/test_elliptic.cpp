#include "congest/elliptic.hpp"

#include <doctest.h>

#include <cmath>

using namespace congest;

namespace {

EllipticProblem pi_problem(const Grid& g, int stride, double scale) {
  EllipticProblem p;
  p.grid = g;
  p.kind = UnknownKind::Pi;
  p.stride = stride;
  p.scale = {scale, scale};
  for (int axis = 0; axis < g.dim; ++axis) {
    p.coupling[axis] = PaddedField(g, stride);
    Field ones = Field::Ones(g.cells());
    p.coupling[axis] = fill_ghosts(ones, g, stride, GhostRule{});
  }
  p.rhs = Field::Zero(g.cells());
  p.law = PressureLawd(1e-3, 2.0, 2.0);
  return p;
}

}  // namespace

TEST_CASE("zero scale decouples every cell") {
  const Grid g = Grid::line(12);
  EllipticProblem p = pi_problem(g, 2, 0.0);
  p.rhs = Field::LinSpaced(12, 0.3, 0.95);
  const EllipticSolution s = solve_newton(p, Field::Constant(12, 1e-3));
  for (int c = 0; c < 12; ++c) {
    CHECK(s.solution[c] == doctest::Approx(singular_pressure(p.rhs[c], p.law)).epsilon(1e-10));
  }
}

TEST_CASE("uniform data is a fixed point") {
  const Grid g = Grid::square(8, 8, {});
  EllipticProblem p = pi_problem(g, 2, 5.0);
  p.rhs.setConstant(0.8);
  const double pi = singular_pressure(0.8, p.law);
  const Field r = apply_discrete_operator(p, Field::Constant(g.cells(), pi));
  CHECK(r.abs().maxCoeff() < 1e-14);
  const EllipticSolution s = solve_newton(p, Field::Constant(g.cells(), pi));
  CHECK(s.report.iterations <= 1);
}

TEST_CASE("manufactured solution is recovered in 1D and 2D") {
  for (int dim : {1, 2}) {
    const Grid g = dim == 1 ? Grid::line(40) : Grid::square(16, 16, {});
    for (int stride : {1, 2}) {
      EllipticProblem p = pi_problem(g, stride, 3.0);
      p.map_weight = Field::Constant(g.cells(), 1.1);
      Field exact(g.cells());
      for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
          exact[g.index(i, j)] = 0.01 * (1.5 + std::sin(2 * M_PI * g.x_center(i)) * std::cos(2 * M_PI * g.y_center(j)));
        }
      }
      p.rhs = apply_discrete_operator(p, exact);
      const EllipticSolution s = solve_newton(p, Field::Constant(g.cells(), 0.01));
      CHECK(s.report.converged);
      CHECK(s.report.iterations < 30);
      CHECK((s.solution - exact).abs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("stride two decouples even and odd cells on a periodic line") {
  const Grid g = Grid::line(16);
  EllipticProblem a = pi_problem(g, 2, 10.0);
  a.rhs = Field::LinSpaced(16, 0.5, 0.9);
  EllipticProblem b = a;
  for (int c = 0; c < 16; c += 2) b.rhs[c] = 0.6;
  const Field guess = Field::Constant(16, 1e-3);
  const Field sa = solve_newton(a, guess).solution;
  const Field sb = solve_newton(b, guess).solution;
  for (int c = 1; c < 16; c += 2) CHECK(sa[c] == doctest::Approx(sb[c]).epsilon(1e-12));
}

TEST_CASE("operator maps evaluate the pressure law") {
  const Grid g = Grid::line(4);
  EllipticProblem p = pi_problem(g, 1, 1.0);
  p.map_weight = Field::Constant(4, 2.0);
  const double pi = 0.02;
  CHECK(elliptic_diagonal_map(p, 0, pi) == doctest::Approx(2.0 * singular_pressure_inverse(pi, p.law)));
  CHECK(elliptic_pressure_map(p, 0, pi) == pi);
}

TEST_CASE("mismatched inputs are rejected") {
  const Grid g = Grid::line(8);
  EllipticProblem p = pi_problem(g, 2, 1.0);
  CHECK_THROWS_AS(solve_newton(p, Field::Zero(5)), std::invalid_argument);
  p.stride = 3;
  CHECK_THROWS_AS(solve_newton(p, Field::Constant(8, 0.1)), std::invalid_argument);
}

TEST_CASE("iteration cap raises NewtonError") {
  const Grid g = Grid::line(16);
  EllipticProblem p = pi_problem(g, 2, 50.0);
  p.rhs = Field::LinSpaced(16, 0.2, 0.999);
  p.options.max_iter = 1;
  CHECK_THROWS_AS(solve_newton(p, Field::Constant(16, 1e-6)), NewtonError);
}
