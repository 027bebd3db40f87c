#pragma once

// Qubit transformations exp(-p G) for single family generators: closed
// forms, Bloch-vector actions, the affine representation r' = A r + kappa,
// positivity ranges and complete-positivity tests.

#include <array>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "dmsym/generators.hpp"
#include "dmsym/linops.hpp"

namespace dmsym {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
  double& operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }
  double norm_squared() const { return x * x + y * y + z * z; }
  double norm() const;
  bool in_ball(double tol = 1e-12) const { return norm_squared() <= 1.0 + tol; }

  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

double max_abs_difference(const BlochVector& a, const BlochVector& b);

/// rho = (1 + r.sigma) / 2.
ComplexMatrix bloch_to_rho(const BlochVector& r);
/// r_i = Tr(sigma_i rho). Throws DimensionError unless rho is 2 x 2.
BlochVector rho_to_bloch(const ComplexMatrix& rho);

/// Purity Tr(rho^2).
double purity(const ComplexMatrix& rho);

/// Closed-form exp(-p G) for a two-level generator:
///   rotation     I - sin(p) iR_i + (1 - cos(p)) D_i
///   dilation     I + (1 - e^p) D_i
///   hyperbolic   I + (1 - cosh(p)) D_k - sinh(p) H_ij
///   translation  I - p P_ij
/// Throws std::invalid_argument for N != 2 or HSym(i,i).
Superoperator closed_form_transform(const GeneratorId& id, double p);

/// Bloch-space action of closed_form_transform(id, p), evaluated directly:
/// right-handed rotation about axis i by p; scaling by e^p of the components
/// orthogonal to axis i; hyperbolic rotation in the (i, j) plane; shift of
/// axis k by 2 e_ijk p.
BlochVector bloch_action(const GeneratorId& id, double p, const BlochVector& r);

/// (x cosh(phi) - y sinh(phi), -x sinh(phi) + y cosh(phi), z).
BlochVector hyperbolic_action_check(double phi, const BlochVector& r);

struct AffineMap {
  Eigen::Matrix3d a = Eigen::Matrix3d::Identity();
  Eigen::Vector3d kappa = Eigen::Vector3d::Zero();
  /// Singular values of a; |diag(a)| in axis order when a is diagonal,
  /// descending otherwise.
  Eigen::Vector3d eta = Eigen::Vector3d::Ones();

  BlochVector operator()(const BlochVector& r) const;
};

/// Throws Error when S is not a hermiticity- and trace-preserving N = 2
/// superoperator. Condition checks use the given tolerance.
AffineMap affine_of(const Superoperator& s, double tol = 1e-10);

enum class CpVerdict { CP, NotCP, NotApplicable };
std::string to_string(CpVerdict v);

inline constexpr double kCpTol = 1e-10;

/// Fujiwara-Algoet test (eta_x +- eta_y)^2 <= (1 +- eta_z)^2 with
/// |eta_z| <= 1, for unital maps with det(A) >= 0; NotApplicable otherwise.
CpVerdict fujiwara_algoet_cp(const AffineMap& m, double tol = kCpTol);

struct ChoiResult {
  CpVerdict verdict = CpVerdict::NotApplicable;
  double min_eigenvalue = 0.0;
};

/// Choi matrix C[(k,i),(l,j)] = S[(i,j),(k,l)] = (S |k><l|)_ij; CP iff its
/// smallest eigenvalue is >= -tol. Throws Error when S is not
/// hermiticity preserving.
ChoiResult choi_cp(const Superoperator& s, double tol = kCpTol);
ComplexMatrix choi_matrix(const Superoperator& s);

struct ParamInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double p, double tol = 0.0) const { return p >= lo - tol && p <= hi + tol; }
  bool bounded_below() const { return lo > -std::numeric_limits<double>::infinity(); }
  bool bounded_above() const { return hi < std::numeric_limits<double>::infinity(); }
};

/// Largest closed interval of p containing 0 for which bloch_action(id, p, r)
/// stays in the closed unit ball. Throws std::invalid_argument when r is
/// outside the ball.
ParamInterval positivity_range(const GeneratorId& id, const BlochVector& r);

/// S^T; the observable transforms as a' = (S_adj)^-1 a. Throws Error when S
/// is singular.
Superoperator adjoint_map(const Superoperator& s);

}  // namespace dmsym
