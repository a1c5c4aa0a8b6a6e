#pragma once

// Test problems (1D Riemann and smooth data, 2D collisions, room evacuation),
// a driver that steps them to a final time, and the grid-refinement study.

#include "congest/scheme_sl.hpp"
#include "congest/scheme_zq.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace congest {

enum class ScenarioKind { Riemann1d, Smooth1d, Collide2d, Evacuate2d };
enum class SchemeKind { Zq, Sl };
enum class EvacuationProfile { Constant, Linear, Step, Random };

std::string to_string(ScenarioKind k);
std::string to_string(SchemeKind k);
std::string to_string(EvacuationProfile p);
ScenarioKind parse_scenario_kind(const std::string& s);
SchemeKind parse_scheme_kind(const std::string& s);
EvacuationProfile parse_evacuation_profile(const std::string& s);

struct Scenario {
  ScenarioKind kind = ScenarioKind::Riemann1d;
  SchemeKind scheme = SchemeKind::Zq;
  SchemeConfig config{};
  SemiLagConfig semilag{};
  int nx = 1000;
  int ny = 1;  // ignored for 1D problems
  double t_end = 0.1;
  /// When positive, overrides the time step chosen by the configuration.
  double fixed_dt = 0.0;
  /// Frames are recorded every frame_interval in time (0: initial and final only).
  double frame_interval = 0.0;

  // Collisions.
  int collide_case = 1;
  double square_density = 0.7;
  double background_density = 0.1;
  double square_momentum = 0.5;

  // Evacuation.
  EvacuationProfile profile = EvacuationProfile::Constant;
  double rho_star_constant = 1.0;
  double initial_density = 0.6;
  double beta = 0.1;
  double exit_lo = 0.4;
  double exit_hi = 0.6;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on a non-positive or inconsistent parameter.
  void validate() const;
};

/// Paper-style defaults for each problem family at desk scale.
Scenario default_scenario(ScenarioKind kind);

Grid make_grid(const Scenario& s);
GridState build_initial_state(const Scenario& s, const Grid& grid);

struct ScenarioFrame {
  int step = 0;
  GridState state;
};

struct ScenarioResult {
  Grid grid;
  GridState final_state;
  std::vector<ScenarioFrame> frames;
  std::vector<double> times;  // after every step, starting with the initial time
  std::vector<double> mass;
  std::vector<double> max_speed;
  std::vector<int> newton_iterations;  // per step, summed over solves
  int max_newton_iterations = 0;       // worst single elliptic solve
  int steps = 0;
  int implicit_switches = 0;
  std::size_t density_clamps = 0;
  double max_fraction = 0.0;  // largest Z seen after any step
  double max_mass_drift = 0.0;  // largest |mass change| / mass over one step
};

/// Carries the index of the step that failed.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& what, int step) : std::runtime_error(what), step(step) {}
  int step;
};

using StepObserver = std::function<void(const GridState&, const Grid&, int step)>;

/// Steps the scenario to t_end with dt from the configuration; the last step
/// is shortened to land on t_end.
ScenarioResult run_scenario(const Scenario& s, const StepObserver& observer = {});

/// Advances one step with the scheme selected by the scenario.
GridState advance(const Scenario& s, const GridState& state, const Grid& grid, double dt,
                  StepDiagnostics* diag);

/// Values of a fine 1D periodic solution at the cell centres of `coarse`
/// (linear interpolation).
Field sample_periodic(const Field& fine, const Grid& fine_grid, const Grid& coarse);

struct ConvergenceReport {
  std::vector<double> dx;
  /// errors[v][k]: L1 error of variable v (rho, q, Z, rho_star) at dx[k].
  std::array<std::vector<double>, 4> errors;
  std::array<double, 4> slopes{};
  static constexpr std::array<const char*, 4> kNames{"rho", "q", "Z", "rho_star"};
};

/// Least-squares slope of log(error) against log(dx).
double fitted_slope(const std::vector<double>& dx, const std::vector<double>& err);

/// Runs `base` at each resolution 1/dx and compares with `reference` sampled
/// at the coarse cell centres.
ConvergenceReport run_convergence_study(const Scenario& base, const std::vector<int>& resolutions,
                                        const ScenarioResult& reference);

/// Second-order zq reference on the smooth problem at resolution n.
ScenarioResult smooth_reference(const Scenario& base, int n);

}  // namespace congest
