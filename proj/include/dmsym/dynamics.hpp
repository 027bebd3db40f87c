#pragma once

// Amplitude and phase damping of a two-level system, d rho/dt = -K rho.
//
//   K_amp(b, gamma) = omega0 iR_3 + K_d,
//   K_d             = -gamma b (P_12 / (2b) + D_1 + D_2),
//   b               = n + 1/2 = coth(omega0 / 2T) / 2   (k_B = 1),
//   K_ph            = -gamma D_3.

#include <optional>
#include <string>
#include <vector>

#include "dmsym/generators.hpp"
#include "dmsym/linops.hpp"
#include "dmsym/maps.hpp"

namespace dmsym {

struct DampingParams {
  double omega0 = 1.0;
  double gamma = 0.1;
  double b = 0.5;

  /// Bose-Einstein occupation n = b - 1/2.
  double occupation() const { return b - 0.5; }
  /// Throws std::invalid_argument unless omega0 > 0, gamma > 0, b >= 1/2.
  void validate() const;

  /// b = coth(omega0 / (2 T)) / 2.
  static DampingParams from_temperature(double omega0, double gamma, double temperature);
};

/// K_amp written in Lindblad form from sigma_+- products.
Superoperator amplitude_damping_lindblad(const DampingParams& p);
/// omega0 iR_3 - gamma b (P_12 / (2b) + D_1 + D_2) for any b != 0; no
/// physical-range check.
Superoperator amplitude_damping_generator(double omega0, double gamma, double b);
/// K_d(b, gamma).
Superoperator amplitude_damping_dissipator(double gamma, double b);

/// Validated K_amp; builds both forms above and throws Error if they differ
/// by more than 1e-13.
Superoperator amplitude_damping(const DampingParams& p);

/// -gamma D_3, cross-checked against -(gamma/2)(s_3 x s_3 - I). Throws
/// std::invalid_argument unless gamma > 0.
Superoperator phase_damping(double gamma);

struct InteractionPicture {
  Superoperator generator;       // K_d, time independent
  double max_conjugation_residual = 0.0;
};

/// exp(omega0 t iR_3) K_d exp(-omega0 t iR_3) = K_d, verified at the given
/// sample times. Throws std::invalid_argument when K is not K_amp(p), Error
/// when a residual exceeds 1e-12.
InteractionPicture interaction_picture(const Superoperator& k, const DampingParams& p,
                                       const std::vector<double>& sample_times = {0.7, 3.1});

/// exp(-K_d t) = I + (1/2)(1 - e^{-2 gamma b t})(P_12/(2b) + D_1 + D_2)
///                 + (1/2)(1 - e^{-gamma b t})^2 D_3.
Superoperator interaction_propagator(const DampingParams& p, double t);

struct EvolutionPoint {
  BlochVector schrodinger;
  BlochVector interaction;
  bool negative_time = false;
};

/// Closed-form Bloch trajectory of amplitude damping at time t: the
/// interaction-picture vector, then a rotation by omega0 t about axis 3.
/// Also applies interaction_propagator() and throws Error when the two
/// disagree by more than 1e-12.
EvolutionPoint evolve_closed_form(const DampingParams& p, const BlochVector& r0, double t);

/// Phase damping: (x0 e^{-gamma t}, y0 e^{-gamma t}, z0).
BlochVector evolve_phase_damping(double gamma, const BlochVector& r0, double t);

/// expm(K, -t) rho0. Throws Error on non-finite input.
ComplexMatrix evolve_oracle(const Superoperator& k, const ComplexMatrix& rho0, double t);

enum class SymmetryKind { Exact, FormInvariant, NotASymmetry };
std::string to_string(SymmetryKind kind);

struct SymmetryVerdict {
  SymmetryKind kind = SymmetryKind::NotASymmetry;
  std::optional<DampingParams> params;  // set for FormInvariant
  double residual = 0.0;
  std::string diagnostic;
};

inline constexpr double kSymmetryTol = 1e-12;

/// K' = S K S^-1. Exact when K' = K; FormInvariant when K' = K_amp(omega0,
/// gamma', b') with omega0 from the template, gamma' > 0 and b' >= 1/2, fitted
/// from the extracted coefficients. Throws Error when S is singular.
SymmetryVerdict classify_symmetry(const Superoperator& k, const Superoperator& s,
                                  const DampingParams& tmpl);

enum class StationaryKind { Point, ZAxisManifold };

struct StationaryState {
  StationaryKind kind = StationaryKind::Point;
  BlochVector point;           // valid for Point
  int nullity = 0;             // null-space dimension of K
  double oracle_residual = 0.0;  // |K rho_st| (Point) or |K diag| (manifold)
  std::optional<BlochVector> oracle_point;  // from a one-dimensional null space
};

class StationaryStateError : public Error {
 public:
  using Error::Error;
};

/// Zero-coherence stationary state of a two-level generator given in the D_i
/// convention with only omega_3 nonzero among the omegas:
///   z_st = -2 b12 / (a11 + a22) = -2 b13 / a23 = 2 b23 / a13.
/// Throws StationaryStateError when defined ratios disagree, a nonzero
/// numerator sits over a zero denominator, or the null-space check fails.
StationaryState stationary_state(const CoefficientVector& c);

}  // namespace dmsym
