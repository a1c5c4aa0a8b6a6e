#pragma once

// Pressure laws of the congested Euler system and the characteristic speeds
// they induce. Everything here is a pure scalar map templated on the scalar
// type so that tests can evaluate the same formulas in extended precision.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace congest {

/// Raised when a pressure law is evaluated outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluations of the singular pressure reject Z >= 1 - kSingularGuard.
inline constexpr double kSingularGuard = 1e-14;

/// Parameters of the two power laws: background p(Z) = Z^gamma and singular
/// pi_eps(Z) = epsilon (Z / (1 - Z))^alpha.
template <typename Scalar>
struct PressureLaw {
  Scalar epsilon{1e-2};
  Scalar alpha{2};
  Scalar gamma{2};

  PressureLaw() = default;
  PressureLaw(Scalar eps, Scalar a, Scalar g) : epsilon(eps), alpha(a), gamma(g) {
    if (!(eps > 0) || !(a > 0) || !(g > 1)) {
      throw DomainError("PressureLaw requires epsilon > 0, alpha > 0, gamma > 1");
    }
  }

  template <typename Other>
  PressureLaw<Other> cast() const {
    PressureLaw<Other> out;
    out.epsilon = static_cast<Other>(epsilon);
    out.alpha = static_cast<Other>(alpha);
    out.gamma = static_cast<Other>(gamma);
    return out;
  }
};

using PressureLawd = PressureLaw<double>;

namespace detail {
template <typename Scalar>
void require_fraction(Scalar z, const char* what) {
  if (!(z >= Scalar(0))) {
    throw DomainError(std::string(what) + ": density fraction must be >= 0");
  }
}
template <typename Scalar>
void require_below_congestion(Scalar z, const char* what) {
  require_fraction(z, what);
  if (!(z < Scalar(1) - Scalar(kSingularGuard))) {
    throw DomainError(std::string(what) + ": density fraction at the congestion singularity");
  }
}
}  // namespace detail

template <typename Scalar>
Scalar background_pressure(Scalar z, const PressureLaw<Scalar>& law) {
  detail::require_fraction(z, "background_pressure");
  using std::pow;
  return pow(z, law.gamma);
}

template <typename Scalar>
Scalar background_pressure_derivative(Scalar z, const PressureLaw<Scalar>& law) {
  detail::require_fraction(z, "background_pressure_derivative");
  using std::pow;
  return law.gamma * pow(z, law.gamma - Scalar(1));
}

template <typename Scalar>
Scalar singular_pressure(Scalar z, const PressureLaw<Scalar>& law) {
  detail::require_below_congestion(z, "singular_pressure");
  using std::pow;
  return law.epsilon * pow(z / (Scalar(1) - z), law.alpha);
}

template <typename Scalar>
Scalar singular_pressure_derivative(Scalar z, const PressureLaw<Scalar>& law) {
  detail::require_below_congestion(z, "singular_pressure_derivative");
  using std::pow;
  if (z == Scalar(0)) return Scalar(0);
  const Scalar one_minus = Scalar(1) - z;
  return law.epsilon * law.alpha * pow(z, law.alpha - Scalar(1)) /
         pow(one_minus, law.alpha + Scalar(1));
}

/// Inverse of the singular pressure: Z = s / (1 + s), s = (pi / eps)^(1/alpha).
template <typename Scalar>
Scalar singular_pressure_inverse(Scalar pi, const PressureLaw<Scalar>& law) {
  if (!(pi >= Scalar(0))) throw DomainError("singular_pressure_inverse: pi must be >= 0");
  using std::pow;
  const Scalar s = pow(pi / law.epsilon, Scalar(1) / law.alpha);
  return s / (Scalar(1) + s);
}

/// dZ/dpi of the inverse map. Unbounded at pi = 0 when alpha > 1.
template <typename Scalar>
Scalar singular_pressure_inverse_derivative(Scalar pi, const PressureLaw<Scalar>& law) {
  if (!(pi > Scalar(0))) throw DomainError("singular_pressure_inverse_derivative: pi must be > 0");
  using std::pow;
  const Scalar s = pow(pi / law.epsilon, Scalar(1) / law.alpha);
  const Scalar ds = s / (law.alpha * pi);
  return ds / ((Scalar(1) + s) * (Scalar(1) + s));
}

/// Total pressure p_eps = p + pi_eps, or the background part alone when
/// include_singular is false.
template <typename Scalar>
Scalar total_pressure(Scalar z, const PressureLaw<Scalar>& law, bool include_singular = true) {
  Scalar p = background_pressure(z, law);
  if (include_singular) p += singular_pressure(z, law);
  return p;
}

template <typename Scalar>
Scalar total_pressure_derivative(Scalar z, const PressureLaw<Scalar>& law,
                                 bool include_singular = true) {
  Scalar dp = background_pressure_derivative(z, law);
  if (include_singular) dp += singular_pressure_derivative(z, law);
  return dp;
}

/// Wave speeds in the direction of the momentum component q1, ascending.
template <typename Scalar>
std::array<Scalar, 3> eigenvalues(Scalar rho, Scalar q1, Scalar z, const PressureLaw<Scalar>& law,
                                  bool include_singular) {
  if (!(rho > Scalar(0))) throw DomainError("eigenvalues: density must be positive");
  using std::sqrt;
  const Scalar v = q1 / rho;
  const Scalar c = sqrt(z / rho * total_pressure_derivative(z, law, include_singular));
  return {v - c, v, v + c};
}

}  // namespace congest
