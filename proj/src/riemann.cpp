#include "congest/riemann.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace congest {

namespace {

constexpr double kQuadratureTolerance = 1e-10;
// Requested per piece. Boost's Gauss-Kronrod error estimate has a floor of a
// few 1e-12 relative per leaf, so asking for less only recurses to max depth
// while the summed estimate grows.
constexpr double kQuadratureRequest = 1e-11;
// Absolute error accepted on round-off small pieces (the integral is a velocity).
constexpr double kQuadratureFloor = 1e-14;
constexpr double kUpperFraction = 1.0 - 2.0 * kSingularGuard;

double pressure(double z, const PressureLawd& law, bool include_singular) {
  return total_pressure(z, law, include_singular);
}

double sound_speed(double z, double rho_star, const PressureLawd& law, bool include_singular) {
  // sqrt(Z p'(Z) / rho) with rho = rho_star Z.
  return std::sqrt(total_pressure_derivative(z, law, include_singular) / rho_star);
}

double sign_of(double x) { return (x > 0) - (x < 0); }

void require_family(int family) {
  if (family != 1 && family != 3) throw std::invalid_argument("wave family must be 1 or 3");
}

void require_open_fraction(double Z, const char* what) {
  if (!(Z > 0.0 && Z < 1.0)) throw DomainError(std::string(what) + ": Z must lie in (0, 1)");
}

template <class F>
double bracketed_root(F f, double lo, double hi, double f_lo, double f_hi) {
  std::uintmax_t max_iter = 300;
  const boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, max_iter);
  return 0.5 * (a + b);
}

}  // namespace

const char* to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::Degenerate: return "degenerate";
    case WaveKind::Shock: return "shock";
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::Contact: return "contact";
  }
  return "?";
}

double hugoniot_velocity(const PrimState& hat, double Z, int family, const PressureLawd& law,
                         bool include_singular) {
  require_family(family);
  require_open_fraction(Z, "hugoniot_velocity");
  require_open_fraction(hat.Z, "hugoniot_velocity");
  const double jump = (1.0 - hat.Z / Z) * (pressure(Z, law, include_singular) -
                                           pressure(hat.Z, law, include_singular));
  const double branch = family == 1 ? -1.0 : 1.0;
  return hat.v + branch * sign_of(Z - hat.Z) * std::sqrt(std::max(jump, 0.0) / hat.rho);
}

double shock_speed(const PrimState& hat, double Z, int family, const PressureLawd& law,
                   bool include_singular) {
  require_family(family);
  require_open_fraction(Z, "shock_speed");
  const double branch = family == 1 ? -1.0 : 1.0;
  if (Z == hat.Z) {
    return hat.v + branch * sound_speed(hat.Z, hat.rho_star(), law, include_singular);
  }
  const double rho = curve_density(hat, Z);
  const double dp = pressure(Z, law, include_singular) - pressure(hat.Z, law, include_singular);
  return hat.v + branch * sign_of(Z - hat.Z) * std::sqrt(rho / hat.rho) *
                     std::sqrt(dp / (rho - hat.rho));
}

double rarefaction_integral(double z0, double z1, double rho_star, const PressureLawd& law,
                            bool include_singular) {
  if (z0 == z1) return 0.0;
  const double a = std::min(z0, z1);
  const double b = std::max(z0, z1);
  auto integrand = [&](double s) {
    return std::sqrt(total_pressure_derivative(s, law, include_singular) / rho_star) / s;
  };
  // Break points accumulate towards Z = 1 where the integrand stiffens.
  // The first piece may reach down to Z ~ 0, where the integrand is a power
  // law; tanh-sinh handles that end, Gauss-Kronrod the smooth pieces above.
  std::vector<double> cuts{a};
  for (double gap = 0.5; gap > 1e-15; gap *= 0.5) {
    const double c = 1.0 - gap;
    if (c > a && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);

  // Non-const: this Boost release defines integrate() without the const qualifier.
  static boost::math::quadrature::tanh_sinh<double> endpoint_rule;
  double total = 0.0;
  double total_error = 0.0;
  double total_l1 = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double error = 0.0;
    double l1 = 0.0;
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (k == 0 && lo < 0.1 * (hi - lo)) {
      total += endpoint_rule.integrate(integrand, lo, hi, kQuadratureRequest, &error, &l1);
    } else {
      // One Kronrod pass first: on short pieces the adaptive refinement only
      // adds per-leaf error floors.
      using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
      double piece = Rule::integrate(integrand, lo, hi, 0, kQuadratureRequest, &error, &l1);
      if (error > std::max(kQuadratureRequest * l1, kQuadratureFloor)) {
        piece = Rule::integrate(integrand, lo, hi, 10, kQuadratureRequest, &error, &l1);
      }
      total += piece;
    }
    total_error += error;
    total_l1 += l1;
  }
  // Relative test, with an absolute floor per piece for round-off small pieces.
  const double floor = kQuadratureFloor * static_cast<double>(cuts.size() - 1);
  if (total_error > std::max(kQuadratureTolerance * total_l1, floor)) {
    throw QuadratureError("rarefaction_integral: quadrature did not reach tolerance", total_error);
  }
  return z1 >= z0 ? total : -total;
}

double rarefaction_velocity(const PrimState& hat, double Z, int family, const PressureLawd& law,
                            bool include_singular) {
  require_family(family);
  require_open_fraction(Z, "rarefaction_velocity");
  const double branch = family == 1 ? -1.0 : 1.0;
  return hat.v + branch * rarefaction_integral(hat.Z, Z, hat.rho_star(), law, include_singular);
}

double wave_curve_velocity(const PrimState& hat, double Z, int family, const PressureLawd& law,
                           bool include_singular) {
  return is_shock_branch(hat, Z) ? hugoniot_velocity(hat, Z, family, law, include_singular)
                                 : rarefaction_velocity(hat, Z, family, law, include_singular);
}

namespace {

NonlinearWave make_wave(const PrimState& hat, double Z_mid, double v_mid, int family,
                        const PressureLawd& law, bool include_singular) {
  NonlinearWave w;
  const double branch = family == 1 ? -1.0 : 1.0;
  if (std::abs(Z_mid - hat.Z) <= 1e-14) {
    w.kind = WaveKind::Degenerate;
    w.lo = w.hi = hat.v + branch * sound_speed(hat.Z, hat.rho_star(), law, include_singular);
  } else if (is_shock_branch(hat, Z_mid)) {
    w.kind = WaveKind::Shock;
    w.lo = w.hi = shock_speed(hat, Z_mid, family, law, include_singular);
  } else {
    w.kind = WaveKind::Rarefaction;
    const double c_hat = sound_speed(hat.Z, hat.rho_star(), law, include_singular);
    const double c_mid = sound_speed(Z_mid, hat.rho_star(), law, include_singular);
    if (family == 1) {
      w.lo = hat.v - c_hat;
      w.hi = v_mid - c_mid;
    } else {
      w.lo = v_mid + c_mid;
      w.hi = hat.v + c_hat;
    }
  }
  return w;
}

}  // namespace

RiemannFan solve_riemann(const PrimState& left, const PrimState& right, const PressureLawd& law,
                         bool include_singular) {
  for (const PrimState* s : {&left, &right}) {
    if (!(s->rho > 0.0) || !(s->Z > 0.0 && s->Z < 1.0)) {
      throw DomainError("solve_riemann: states need rho > 0 and 0 < Z < 1");
    }
  }
  RiemannFan fan;
  fan.left = left;
  fan.right = right;
  fan.law = law;
  fan.include_singular = include_singular;

  auto gap = [&](double Z) {
    return wave_curve_velocity(left, Z, 1, law, include_singular) -
           wave_curve_velocity(right, Z, 3, law, include_singular);
  };

  const double lo = kRiemannFractionFloor;
  const double hi = include_singular ? kUpperFraction : 1.0 - 1e-12;
  const double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (g_lo < 0.0) {
    throw VacuumError("solve_riemann: wave curves separate before Z reaches the floor (vacuum)");
  }
  if (g_hi > 0.0) {
    throw CongestionError(
        "solve_riemann: no intersection below the congestion limit; the data is congested, see "
        "limit_congested_solution");
  }

  // Scan for sign changes to report multiplicity.
  int changes = 0;
  {
    double prev = g_lo;
    constexpr int kScan = 64;
    for (int k = 1; k <= kScan; ++k) {
      const double t = static_cast<double>(k) / kScan;
      const double z = lo + (hi - lo) * t;
      const double g = k == kScan ? g_hi : gap(z);
      if ((prev > 0.0 && g <= 0.0) || (prev < 0.0 && g >= 0.0)) ++changes;
      prev = g;
    }
  }
  fan.intersections = std::max(changes, 1);

  double Zm = g_lo == 0.0 ? lo : (g_hi == 0.0 ? hi : bracketed_root(gap, lo, hi, g_lo, g_hi));
  if (std::abs(Zm - left.Z) <= 1e-14 && std::abs(Zm - right.Z) <= 1e-14) Zm = left.Z;
  fan.Z_mid = Zm;
  fan.v_mid = wave_curve_velocity(left, Zm, 1, law, include_singular);
  fan.rho_mid_left = Zm * left.rho / left.Z;
  fan.rho_mid_right = Zm * right.rho / right.Z;
  fan.wave1 = make_wave(left, Zm, fan.v_mid, 1, law, include_singular);
  fan.wave3 = make_wave(right, Zm, fan.v_mid, 3, law, include_singular);
  fan.contact = std::abs(fan.rho_mid_left - fan.rho_mid_right) > 0.0 ? WaveKind::Contact
                                                                     : WaveKind::Degenerate;
  fan.p_bar = pressure(Zm, law, include_singular);
  return fan;
}

namespace {

// State inside a rarefaction fan of the given family at similarity speed xi.
PrimState inside_rarefaction(const RiemannFan& fan, const PrimState& hat, int family, double xi) {
  const double rho_star = hat.rho_star();
  const double branch = family == 1 ? -1.0 : 1.0;
  auto speed_at = [&](double Z) {
    const double v = hat.v + branch * rarefaction_integral(hat.Z, Z, rho_star, fan.law,
                                                           fan.include_singular);
    return v + branch * sound_speed(Z, rho_star, fan.law, fan.include_singular);
  };
  double a = std::min(hat.Z, fan.Z_mid);
  double b = std::max(hat.Z, fan.Z_mid);
  auto f = [&](double Z) { return speed_at(Z) - xi; };
  const double fa = f(a);
  const double fb = f(b);
  double Z;
  if (fa == 0.0) Z = a;
  else if (fb == 0.0) Z = b;
  else if ((fa > 0.0) == (fb > 0.0)) Z = std::abs(fa) < std::abs(fb) ? a : b;
  else Z = bracketed_root(f, a, b, fa, fb);
  const double v = hat.v + branch * rarefaction_integral(hat.Z, Z, rho_star, fan.law,
                                                         fan.include_singular);
  return {rho_star * Z, v, Z};
}

}  // namespace

PrimState sample_solution(const RiemannFan& fan, double xi) {
  if (xi < fan.v_mid) {
    const NonlinearWave& w = fan.wave1;
    if (xi < w.lo) return fan.left;
    if (w.kind == WaveKind::Rarefaction && xi < w.hi) return inside_rarefaction(fan, fan.left, 1, xi);
    return fan.mid_left();
  }
  const NonlinearWave& w = fan.wave3;
  if (xi > w.hi) return fan.right;
  if (w.kind == WaveKind::Rarefaction && xi > w.lo) return inside_rarefaction(fan, fan.right, 3, xi);
  return fan.mid_right();
}

RiemannFan limit_congested_solution(const PrimState& left, const PrimState& right, double gamma) {
  PressureLawd law;
  law.gamma = gamma;
  for (const PrimState* s : {&left, &right}) {
    if (!(s->rho > 0.0) || !(s->Z > 0.0 && s->Z < 1.0)) {
      throw DomainError("limit_congested_solution: states need rho > 0 and 0 < Z < 1");
    }
  }
  // eps = 0 curves evaluated at Z = 1; the shock branch is active there.
  auto p0 = [&](double z) { return std::pow(z, gamma); };
  auto v_left = [&](double p) { return left.v - std::sqrt((1.0 - left.Z) * (p - p0(left.Z)) / left.rho); };
  auto v_right = [&](double p) {
    return right.v + std::sqrt((1.0 - right.Z) * (p - p0(right.Z)) / right.rho);
  };
  auto g = [&](double p) { return v_left(p) - v_right(p); };

  const double g1 = g(p0(1.0));
  if (!(g1 > 0.0)) {
    throw NotCongestedError(
        "limit_congested_solution: the eps = 0 intersection is not congested; use solve_riemann "
        "with the background pressure only");
  }
  double hi = 2.0;
  while (g(hi) > 0.0) hi *= 2.0;
  const double p_bar = bracketed_root(g, 1.0, hi, g1, g(hi));

  RiemannFan fan;
  fan.left = left;
  fan.right = right;
  fan.law = law;
  fan.include_singular = false;
  fan.congested_limit = true;
  fan.p_bar = p_bar;
  fan.Z_mid = 1.0;
  fan.v_mid = v_left(p_bar);
  fan.rho_mid_left = left.rho_star();
  fan.rho_mid_right = right.rho_star();
  const double rs_l = left.rho_star();
  const double rs_r = right.rho_star();
  const double sigma_minus =
      left.v - std::sqrt(rs_l / (left.rho * (rs_l - left.rho))) * std::sqrt(p_bar - p0(left.Z));
  const double sigma_plus =
      right.v + std::sqrt(rs_r / (right.rho * (rs_r - right.rho))) * std::sqrt(p_bar - p0(right.Z));
  fan.wave1 = {WaveKind::Shock, sigma_minus, sigma_minus};
  fan.wave3 = {WaveKind::Shock, sigma_plus, sigma_plus};
  fan.contact = WaveKind::Contact;
  return fan;
}

std::array<double, 3> rankine_hugoniot_residual(const RiemannFan& fan, int family) {
  require_family(family);
  const NonlinearWave& w = family == 1 ? fan.wave1 : fan.wave3;
  const PrimState a = family == 1 ? fan.left : fan.mid_right();
  const PrimState b = family == 1 ? fan.mid_left() : fan.right;
  const double sigma = w.lo;
  auto p_of = [&](const PrimState& s) {
    if (fan.congested_limit && s.Z >= 1.0) return fan.p_bar;
    return total_pressure(s.Z, fan.law, fan.include_singular);
  };
  const double drho = b.rho - a.rho;
  const double dq = b.q() - a.q();
  const double dmom = (b.q() * b.v + p_of(b)) - (a.q() * a.v + p_of(a));
  const double dzf = b.Z * b.v - a.Z * a.v;
  const double dz = b.Z - a.Z;
  return {dq - sigma * drho, dmom - sigma * dq, dzf - sigma * dz};
}

}  // namespace congest
