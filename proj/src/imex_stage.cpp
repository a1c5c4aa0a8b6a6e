#include "imex_stage.hpp"

#include <algorithm>

namespace congest::detail {

namespace {

// Cap used for starting guesses; the solve itself keeps Z < 1 exactly.
constexpr double kGuessFractionCap = 1.0 - 1e-6;

GhostRule pressure_rule(const Grid& grid, const PressureLawd& law) {
  return ghost_rule(grid, [&law](const ExteriorState& e) { return singular_pressure(e.Z, law); });
}

GhostRule momentum_rule(const Grid& grid, int axis) {
  return ghost_rule(grid, axis == 0 ? Quantity::MomentumX : Quantity::MomentumY);
}

std::array<PaddedField, 2> pad_momentum(const std::array<Field, 2>& q, const Grid& grid) {
  std::array<PaddedField, 2> out;
  for (int a = 0; a < grid.dim; ++a) out[a] = fill_ghosts(q[a], grid, 1, momentum_rule(grid, a));
  return out;
}

struct Predictor {
  std::array<Field, 2> q_tilde;
  std::array<Field, 2> m_tilde;
};

// Explicit part of the momentum update and of the implicit mass flux.
Predictor predict(const Grid& grid, const SchemeConfig& cfg, const GridState& base,
                  const ExplicitFluxes& expl, StageSpec spec) {
  Predictor p;
  std::array<Field, 2> grad_pi;
  if (spec.theta < 1.0) {
    Field pi(base.Z.size());
    for (Eigen::Index c = 0; c < pi.size(); ++c) pi[c] = singular_pressure(base.Z[c], cfg.law);
    const PaddedField padded = fill_ghosts(pi, grid, 1, pressure_rule(grid, cfg.law));
    for (int a = 0; a < grid.dim; ++a) grad_pi[a] = centred_gradient(padded, grid, a);
  }
  for (int a = 0; a < grid.dim; ++a) {
    const Field divG = face_divergence(expl, grid, [a](const AxisFluxes& f) -> const Field& {
      return f.G[a];
    });
    p.q_tilde[a] = base.q[a] - spec.h * divG;
    if (spec.theta < 1.0) p.q_tilde[a] -= spec.h * (1.0 - spec.theta) * grad_pi[a];
    p.m_tilde[a] = spec.mu * p.q_tilde[a] + (1.0 - spec.mu) * base.q[a];
  }
  return p;
}

void track(StageResult& r, const ExplicitFluxes& f) { r.max_speed = std::max(r.max_speed, f.max_speed); }

}  // namespace

Field pressure_guess(const Field& z, const PressureLawd& law) {
  Field out(z.size());
  for (Eigen::Index c = 0; c < z.size(); ++c) {
    out[c] = singular_pressure(std::clamp(z[c], 0.0, kGuessFractionCap), law);
  }
  return out;
}

StageResult zq_stage(const Grid& grid, const SchemeConfig& cfg, const GridState& base,
                     const GridState& explicit_state, const GridState& weight, StageSpec spec) {
  StageResult result;
  const PaddedState pb = fill_ghosts(base, grid, 2);
  const ExplicitFluxes fb = explicit_fluxes(pb, grid, cfg.law, cfg.space_order);
  track(result, fb);
  ExplicitFluxes fe_storage;
  const ExplicitFluxes* fe = &fb;
  if (&explicit_state != &base) {
    fe_storage = explicit_fluxes(fill_ghosts(explicit_state, grid, 2), grid, cfg.law, cfg.space_order);
    fe = &fe_storage;
    track(result, fe_storage);
  }

  const Predictor pred = predict(grid, cfg, base, *fe, spec);

  // Coefficients Z / rho with their ghosts.
  const Field w = weight.Z / weight.rho;
  const PaddedField w_pad = fill_ghosts(
      w, grid, 1, ghost_rule(grid, [](const ExteriorState& e) { return e.Z / e.rho; }));

  // phi = Z_base - h [div_c(w m_tilde) - div D_Z]
  std::array<PaddedField, 2> wm = pad_momentum(pred.m_tilde, grid);
  for (int a = 0; a < grid.dim; ++a) wm[a].raw() *= w_pad.raw();
  const Field divD_Z = face_divergence(fb, grid, [](const AxisFluxes& f) -> const Field& { return f.D_Z; });
  const Field phi = base.Z - spec.h * (centred_divergence(wm, grid) - divD_Z);

  EllipticProblem prob;
  prob.grid = grid;
  prob.kind = UnknownKind::Pi;
  prob.stride = 2;
  prob.rhs = phi;
  prob.law = cfg.law;
  prob.pressure_ghosts = pressure_rule(grid, cfg.law);
  prob.options = cfg.newton;
  for (int a = 0; a < grid.dim; ++a) {
    const double d = grid.spacing(a);
    prob.scale[a] = spec.mu * spec.theta * spec.h * spec.h / (4.0 * d * d);
    PaddedField k(grid, 2);
    const int n = grid.extent(a);
    const int nt = grid.dim == 2 ? grid.extent(1 - a) : 1;
    for (int t = 0; t < nt; ++t) {
      for (int lower = -2; lower < n; ++lower) {
        const int mid = lower + 1;
        bool open = true;
        if (mid < 0 || mid >= n) open = !ghost_source(grid, a, mid, t).dirichlet;
        const double value = open ? (a == 0 ? w_pad(mid, t) : w_pad(t, mid)) : 0.0;
        if (a == 0) k(lower, t) = value;
        else k(t, lower) = value;
      }
    }
    prob.coupling[a] = std::move(k);
  }

  const EllipticSolution sol = solve_newton(prob, pressure_guess(base.Z, cfg.law));
  result.report = sol.report;
  const PaddedField pi_pad = fill_ghosts(sol.solution, grid, 1, prob.pressure_ghosts);

  GridState& out = result.state;
  out.time = base.time + spec.h;
  std::array<Field, 2> m;
  for (int a = 0; a < grid.dim; ++a) {
    out.q[a] = pred.q_tilde[a] - spec.h * spec.theta * centred_gradient(pi_pad, grid, a);
    m[a] = spec.mu * out.q[a] + (1.0 - spec.mu) * base.q[a];
  }
  const Field divD_rho =
      face_divergence(fb, grid, [](const AxisFluxes& f) -> const Field& { return f.D_rho; });
  out.rho = base.rho - spec.h * (centred_divergence(pad_momentum(m, grid), grid) - divD_rho);
  out.Z.resize(grid.cells());
  for (Eigen::Index c = 0; c < out.Z.size(); ++c) {
    out.Z[c] = singular_pressure_inverse(sol.solution[c], cfg.law);
  }
  out.rho_star = out.rho / out.Z;
  return result;
}

StageResult sl_stage(const Grid& grid, const SchemeConfig& cfg, const GridState& base,
                     const GridState& explicit_state, const Field& rho_star, StageSpec spec) {
  StageResult result;
  const PaddedState pb = fill_ghosts(base, grid, 2);
  const ExplicitFluxes fb = explicit_fluxes(pb, grid, cfg.law, cfg.space_order);
  track(result, fb);
  ExplicitFluxes fe_storage;
  const ExplicitFluxes* fe = &fb;
  if (&explicit_state != &base) {
    fe_storage = explicit_fluxes(fill_ghosts(explicit_state, grid, 2), grid, cfg.law, cfg.space_order);
    fe = &fe_storage;
    track(result, fe_storage);
  }

  const Predictor pred = predict(grid, cfg, base, *fe, spec);
  const std::array<PaddedField, 2> m_pad = pad_momentum(pred.m_tilde, grid);

  // Explicit face mass flux avg(m_tilde) - D_rho, per axis, same layout as AxisFluxes.
  std::array<Field, 2> face_mass;
  for (int a = 0; a < grid.dim; ++a) {
    const AxisFluxes& ax = fb.axes[a];
    const int n = grid.extent(a);
    const int nt = grid.dim == 2 ? grid.extent(1 - a) : 1;
    face_mass[a].resize(ax.D_rho.size());
    for (int t = 0; t < nt; ++t) {
      for (int f = 0; f <= n; ++f) {
        const double lo = a == 0 ? m_pad[a](f - 1, t) : m_pad[a](t, f - 1);
        const double hi = a == 0 ? m_pad[a](f, t) : m_pad[a](t, f);
        face_mass[a][ax.at(f, t)] = 0.5 * (lo + hi) - ax.D_rho[ax.at(f, t)];
      }
    }
  }
  auto divergence = [&](const std::array<Field, 2>& faces) {
    Field out = Field::Zero(grid.cells());
    for (int a = 0; a < grid.dim; ++a) {
      const AxisFluxes& ax = fb.axes[a];
      const double inv = 1.0 / grid.spacing(a);
      for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
          const int k = a == 0 ? i : j;
          const int t = a == 0 ? j : i;
          out[grid.index(i, j)] += (faces[a][ax.at(k + 1, t)] - faces[a][ax.at(k, t)]) * inv;
        }
      }
    }
    return out;
  };

  EllipticProblem prob;
  prob.grid = grid;
  prob.kind = UnknownKind::Pi;
  prob.stride = 1;
  prob.rhs = base.rho - spec.h * divergence(face_mass);
  prob.law = cfg.law;
  prob.map_weight = rho_star;
  prob.pressure_ghosts = pressure_rule(grid, cfg.law);
  prob.options = cfg.newton;
  for (int a = 0; a < grid.dim; ++a) {
    const double d = grid.spacing(a);
    prob.scale[a] = spec.mu * spec.theta * spec.h * spec.h / (d * d);
    PaddedField k(grid, 1);
    k.raw().setOnes();
    prob.coupling[a] = std::move(k);
  }

  const EllipticSolution sol = solve_newton(prob, pressure_guess(base.rho / rho_star, cfg.law));
  result.report = sol.report;
  const PaddedField pi_pad = fill_ghosts(sol.solution, grid, 1, prob.pressure_ghosts);

  for (int a = 0; a < grid.dim; ++a) {
    const AxisFluxes& ax = fb.axes[a];
    const int n = grid.extent(a);
    const int nt = grid.dim == 2 ? grid.extent(1 - a) : 1;
    const double factor = spec.mu * spec.theta * spec.h / grid.spacing(a);
    for (int t = 0; t < nt; ++t) {
      for (int f = 0; f <= n; ++f) {
        const double lo = a == 0 ? pi_pad(f - 1, t) : pi_pad(t, f - 1);
        const double hi = a == 0 ? pi_pad(f, t) : pi_pad(t, f);
        face_mass[a][ax.at(f, t)] -= factor * (hi - lo);
      }
    }
  }

  GridState& out = result.state;
  out.time = base.time + spec.h;
  out.rho = base.rho - spec.h * divergence(face_mass);
  for (int a = 0; a < grid.dim; ++a) {
    out.q[a] = pred.q_tilde[a] - spec.h * spec.theta * centred_gradient(pi_pad, grid, a);
  }
  out.rho_star = rho_star;
  out.Z = out.rho / rho_star;
  return result;
}

}  // namespace congest::detail
