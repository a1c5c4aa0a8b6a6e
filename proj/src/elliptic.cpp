#include "congest/elliptic.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <vector>

namespace congest {

namespace {

// Smallest pi handed to the inverse map; below it Z'(pi) overflows.
constexpr double kPiFloor = 1e-300;
// Relative margin kept between rho and rho_star in the Rho form.
constexpr double kRhoCeilingMargin = 1e-12;

using SpMat = Eigen::SparseMatrix<double>;

struct Link {
  double coeff = 0.0;
  int col = -1;  // -1 for a Dirichlet ghost
  double dirichlet = 0.0;
};

// Two links per axis per cell: +stride then -stride.
std::vector<Link> build_links(const EllipticProblem& p) {
  const Grid& g = p.grid;
  const int s = p.stride;
  std::vector<Link> links(static_cast<std::size_t>(g.cells()) * 2 * g.dim);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int cell = g.index(i, j);
      for (int axis = 0; axis < g.dim; ++axis) {
        const int n = g.extent(axis);
        const int k = axis == 0 ? i : j;
        const int t = axis == 0 ? j : i;
        for (int dir = 0; dir < 2; ++dir) {
          const int nb = dir == 0 ? k + s : k - s;
          const int lower = dir == 0 ? k : k - s;
          Link& l = links[(static_cast<std::size_t>(cell) * g.dim + axis) * 2 + dir];
          l.coeff = p.scale[axis] *
                    (axis == 0 ? p.coupling[0](lower, t) : p.coupling[1](t, lower));
          int src = nb;
          if (nb < 0 || nb >= n) {
            const GhostSource gs = ghost_source(g, axis, nb, t);
            if (gs.dirichlet) {
              l.col = -1;
              l.dirichlet = p.pressure_ghosts.dirichlet[gs.side];
              continue;
            }
            src = gs.source;
          }
          l.col = axis == 0 ? g.index(src, t) : g.index(t, src);
        }
      }
    }
  }
  return links;
}

double pressure_derivative(const EllipticProblem& p, Eigen::Index cell, double u) {
  if (p.kind == UnknownKind::Pi) return 1.0;
  const double rs = p.map_weight[cell];
  return singular_pressure_derivative(u / rs, p.law) / rs;
}

double diagonal_derivative(const EllipticProblem& p, Eigen::Index cell, double u) {
  if (p.kind == UnknownKind::Rho) return 1.0;
  const double w = p.map_weight.size() ? p.map_weight[cell] : 1.0;
  return w * singular_pressure_inverse_derivative(std::max(u, kPiFloor), p.law);
}

Field residual_with(const EllipticProblem& p, const std::vector<Link>& links, const Field& u,
                    Field& pressure) {
  const Eigen::Index n = u.size();
  pressure.resize(n);
  for (Eigen::Index c = 0; c < n; ++c) pressure[c] = elliptic_pressure_map(p, c, u[c]);
  const int per_cell = 2 * p.grid.dim;
  Field r(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    double stencil = 0.0;
    for (int k = 0; k < per_cell; ++k) {
      const Link& l = links[static_cast<std::size_t>(c) * per_cell + k];
      const double b = l.col >= 0 ? pressure[l.col] : l.dirichlet;
      stencil += l.coeff * (b - pressure[c]);
    }
    r[c] = elliptic_diagonal_map(p, c, u[c]) - stencil - p.rhs[c];
  }
  return r;
}

SpMat jacobian(const EllipticProblem& p, const std::vector<Link>& links, const Field& u) {
  const Eigen::Index n = u.size();
  const int per_cell = 2 * p.grid.dim;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * (per_cell + 1));
  Field db(n);
  for (Eigen::Index c = 0; c < n; ++c) db[c] = pressure_derivative(p, c, u[c]);
  for (Eigen::Index c = 0; c < n; ++c) {
    double diag = diagonal_derivative(p, c, u[c]);
    for (int k = 0; k < per_cell; ++k) {
      const Link& l = links[static_cast<std::size_t>(c) * per_cell + k];
      diag += l.coeff * db[c];
      if (l.col >= 0) trip.emplace_back(c, l.col, -l.coeff * db[l.col]);
    }
    trip.emplace_back(c, c, diag);
  }
  SpMat J(n, n);
  J.setFromTriplets(trip.begin(), trip.end());
  J.makeCompressed();
  return J;
}

bool strictly_diagonally_dominant(const SpMat& J) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(J.rows());
  Eigen::VectorXd off = Eigen::VectorXd::Zero(J.rows());
  for (int k = 0; k < J.outerSize(); ++k) {
    for (SpMat::InnerIterator it(J, k); it; ++it) {
      if (it.row() == it.col()) diag[it.row()] += it.value();
      else off[it.row()] += std::abs(it.value());
    }
  }
  return ((diag.array() - off.array()) > 0.0).all();
}

class LinearSolver {
 public:
  explicit LinearSolver(int dim) : dim_(dim) {}

  bool solve(const SpMat& J, const Eigen::VectorXd& b, Eigen::VectorXd& x) {
    if (dim_ == 2) {
      iterative_.setTolerance(1e-12);
      iterative_.setMaxIterations(4 * static_cast<int>(J.rows()));
      iterative_.compute(J);
      if (iterative_.info() == Eigen::Success) {
        x = iterative_.solve(b);
        if (iterative_.info() == Eigen::Success && x.allFinite()) return true;
      }
    }
    if (!analyzed_) {
      direct_.analyzePattern(J);
      analyzed_ = true;
    }
    direct_.factorize(J);
    if (direct_.info() != Eigen::Success) return false;
    x = direct_.solve(b);
    return direct_.info() == Eigen::Success && x.allFinite();
  }

 private:
  int dim_;
  bool analyzed_ = false;
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> direct_;
  Eigen::BiCGSTAB<SpMat, Eigen::DiagonalPreconditioner<double>> iterative_;
};

}  // namespace

double elliptic_diagonal_map(const EllipticProblem& p, Eigen::Index cell, double u) {
  if (p.kind == UnknownKind::Rho) return u;
  const double w = p.map_weight.size() ? p.map_weight[cell] : 1.0;
  return w * singular_pressure_inverse(std::max(u, 0.0), p.law);
}

double elliptic_pressure_map(const EllipticProblem& p, Eigen::Index cell, double u) {
  if (p.kind == UnknownKind::Pi) return u;
  return singular_pressure(u / p.map_weight[cell], p.law);
}

Field apply_discrete_operator(const EllipticProblem& problem, const Field& candidate) {
  const std::vector<Link> links = build_links(problem);
  Field pressure;
  return residual_with(problem, links, candidate, pressure);
}

EllipticSolution solve_newton(const EllipticProblem& problem, const Field& initial_guess) {
  const Grid& g = problem.grid;
  if (initial_guess.size() != g.cells() || problem.rhs.size() != g.cells()) {
    throw std::invalid_argument("solve_newton: field sizes do not match the grid");
  }
  if (problem.stride < 1 || problem.coupling[0].width() < problem.stride) {
    throw std::invalid_argument("solve_newton: coupling ghost width smaller than the stride");
  }
  const NewtonOptions& opt = problem.options;
  const std::vector<Link> links = build_links(problem);

  Field u = initial_guess;
  if (problem.kind == UnknownKind::Pi) {
    u = u.max(kPiFloor);
  } else {
    u = u.max(kDensityFloor).min(problem.map_weight * (1.0 - kRhoCeilingMargin));
  }

  NewtonReport report;
  Field pressure;
  Field r = residual_with(problem, links, u, pressure);
  const double r0 = r.abs().maxCoeff();
  report.residual = r0;
  LinearSolver linear(g.dim);
  Eigen::VectorXd delta;

  auto converged = [&](double res) { return res <= opt.tol_abs || res <= opt.tol_rel * r0; };

  while (!converged(report.residual)) {
    if (report.iterations >= opt.max_iter) {
      throw NewtonError("solve_newton: no convergence after " + std::to_string(opt.max_iter) +
                            " iterations (residual " + std::to_string(report.residual) + ")",
                        report);
    }
    const SpMat J = jacobian(problem, links, u);
    if (opt.check_dominance && !strictly_diagonally_dominant(J)) {
      throw NewtonError("solve_newton: Jacobian lost diagonal dominance", report);
    }
    const Eigen::VectorXd rhs = -r.matrix();
    if (!linear.solve(J, rhs, delta)) {
      throw NewtonError("solve_newton: singular Jacobian", report);
    }
    Field next = u + delta.array();
    for (Eigen::Index c = 0; c < next.size(); ++c) {
      if (next[c] < 0.0) report.negative_request = true;
      if (problem.kind == UnknownKind::Pi) {
        next[c] = std::max({next[c], opt.positivity_floor * u[c], kPiFloor});
      } else {
        const double ceiling = problem.map_weight[c] * (1.0 - kRhoCeilingMargin);
        if (next[c] >= ceiling) next[c] = 0.5 * (u[c] + problem.map_weight[c]);
        next[c] = std::max({next[c], opt.positivity_floor * u[c], kDensityFloor});
      }
    }
    u = std::move(next);
    r = residual_with(problem, links, u, pressure);
    report.residual = r.abs().maxCoeff();
    ++report.iterations;
    if (!std::isfinite(report.residual)) {
      throw NewtonError("solve_newton: residual became non-finite", report);
    }
  }
  report.converged = true;
  return {u, report};
}

}  // namespace congest
