#pragma once

// Newton solver for the nonlinear elliptic systems that carry the implicit
// congestion pressure. Both forms share the residual
//
//   r_i = A(u_i) - sum_axis scale_axis * [ K(i)   (B(u_{i+s}) - B(u_i))
//                                        - K(i-s) (B(u_i) - B(u_{i-s})) ] - rhs_i
//
// where s is the stencil stride and K(i) couples cells i and i+s.
//   Pi form:  u = pi,  A(u) = w_i Z(pi),   B(u) = pi
//   Rho form: u = rho, A(u) = rho,         B(u) = pi_eps(rho / rho_star_i)

#include "congest/eos.hpp"
#include "congest/grid.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace congest {

enum class UnknownKind { Pi, Rho };

struct NewtonOptions {
  double tol_abs = 1e-10;
  double tol_rel = 1e-12;
  int max_iter = 100;
  /// A Newton update may shrink a positive unknown by at most this factor
  /// per iteration; keeps pi > 0 where Z'(pi) is unbounded.
  double positivity_floor = 1e-2;
  /// Verifies strict diagonal dominance of every Jacobian.
  bool check_dominance = false;
};

struct NewtonReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  /// Some Newton update asked for a negative unknown before projection.
  bool negative_request = false;
};

class NewtonError : public std::runtime_error {
 public:
  NewtonError(const std::string& what, NewtonReport r) : std::runtime_error(what), report(r) {}
  NewtonReport report;
};

struct EllipticProblem {
  Grid grid;
  UnknownKind kind = UnknownKind::Pi;
  int stride = 2;
  std::array<double, 2> scale{};
  /// coupling[axis](i, j) links (i, j) with (i + stride, j) along x (and the
  /// transposed pair along y). Needs ghost width >= stride.
  std::array<PaddedField, 2> coupling;
  Field rhs;
  PressureLawd law;
  /// Pi form: weight w_i of Z(pi) (empty means 1). Rho form: rho_star_i.
  Field map_weight;
  /// Dirichlet ghost values of B (the pressure).
  GhostRule pressure_ghosts;
  NewtonOptions options;
};

struct EllipticSolution {
  Field solution;
  NewtonReport report;
};

/// Residual of the discrete system at `candidate` (interior values; ghosts
/// follow the grid's boundary rules).
Field apply_discrete_operator(const EllipticProblem& problem, const Field& candidate);

/// Throws NewtonError when the iteration does not converge or the Jacobian
/// is singular.
EllipticSolution solve_newton(const EllipticProblem& problem, const Field& initial_guess);

/// Evaluates the nonlinear maps A and B at one cell.
double elliptic_diagonal_map(const EllipticProblem& problem, Eigen::Index cell, double u);
double elliptic_pressure_map(const EllipticProblem& problem, Eigen::Index cell, double u);

}  // namespace congest
