#include "dmsym/maps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmsym {

namespace {

int levi_civita(int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; }

void require_qubit_id(const GeneratorId& id, const char* what) {
  id.validate();
  if (id.n != 2) throw std::invalid_argument(std::string(what) + ": two-level generators only");
  if (id.kind == GeneratorKind::HSym && id.i == id.j) {
    throw std::invalid_argument(std::string(what) + ": use Dilation(i) instead of H_ii");
  }
}

void require_in_ball(const BlochVector& r, const char* what) {
  if (!r.in_ball()) {
    throw std::invalid_argument(std::string(what) + ": Bloch vector outside the unit ball (|r|^2 = " +
                                std::to_string(r.norm_squared()) + ")");
  }
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(norm_squared()); }

double max_abs_difference(const BlochVector& a, const BlochVector& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

ComplexMatrix bloch_to_rho(const BlochVector& r) {
  ComplexMatrix rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + r.z);
  rho(0, 1) = Complex(0.5 * r.x, -0.5 * r.y);
  rho(1, 0) = Complex(0.5 * r.x, 0.5 * r.y);
  rho(1, 1) = 0.5 * (1.0 - r.z);
  return rho;
}

BlochVector rho_to_bloch(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("rho_to_bloch: need a 2 x 2 matrix");
  const auto& s = pauli_matrices();
  auto expect = [&](const ComplexMatrix& op) { return (op * rho).trace().real(); };
  return {expect(s[0]), expect(s[1]), expect(s[2])};
}

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

Superoperator closed_form_transform(const GeneratorId& id, double p) {
  require_qubit_id(id, "closed_form_transform");
  const Superoperator eye = Superoperator::identity(2);
  switch (id.kind) {
    case GeneratorKind::Rotation:
      return eye - std::sin(p) * sigma_generator(id) +
             (1.0 - std::cos(p)) * sigma_generator(GeneratorId::dilation(id.i));
    case GeneratorKind::Dilation:
      return eye + (1.0 - std::exp(p)) * sigma_generator(id);
    case GeneratorKind::HSym: {
      const int k = 6 - id.i - id.j;
      return eye + (1.0 - std::cosh(p)) * sigma_generator(GeneratorId::dilation(k)) -
             std::sinh(p) * sigma_generator(id);
    }
    case GeneratorKind::PAnti:
      return eye - p * sigma_generator(id);
  }
  throw std::logic_error("unreachable");
}

BlochVector bloch_action(const GeneratorId& id, double p, const BlochVector& r) {
  require_qubit_id(id, "bloch_action");
  BlochVector out = r;
  switch (id.kind) {
    case GeneratorKind::Rotation: {
      // right-handed rotation about axis a
      const int a = id.i - 1;
      const int b = (a + 1) % 3;
      const int c = (a + 2) % 3;
      out[b] = std::cos(p) * r[b] - std::sin(p) * r[c];
      out[c] = std::sin(p) * r[b] + std::cos(p) * r[c];
      return out;
    }
    case GeneratorKind::Dilation: {
      const double scale = std::exp(p);
      for (int axis = 0; axis < 3; ++axis)
        if (axis != id.i - 1) out[axis] = scale * r[axis];
      return out;
    }
    case GeneratorKind::HSym: {
      const int a = id.i - 1;
      const int b = id.j - 1;
      out[a] = r[a] * std::cosh(p) - r[b] * std::sinh(p);
      out[b] = -r[a] * std::sinh(p) + r[b] * std::cosh(p);
      return out;
    }
    case GeneratorKind::PAnti: {
      const int k = 6 - id.i - id.j;
      out[k - 1] = r[k - 1] + 2.0 * levi_civita(id.i, id.j, k) * p;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

BlochVector hyperbolic_action_check(double phi, const BlochVector& r) {
  return {r.x * std::cosh(phi) - r.y * std::sinh(phi), -r.x * std::sinh(phi) + r.y * std::cosh(phi), r.z};
}

BlochVector AffineMap::operator()(const BlochVector& r) const {
  const Eigen::Vector3d v = a * Eigen::Vector3d(r.x, r.y, r.z) + kappa;
  return {v(0), v(1), v(2)};
}

AffineMap affine_of(const Superoperator& s, double tol) {
  if (s.n() != 2) throw DimensionError("affine_of: two-level superoperators only");
  const ConditionFlags flags = check_conditions(s, tol);
  // S itself is a map, not a generator: hermiticity preservation is S~ = S,
  // trace preservation is 1^t S = 1^t.
  const ComplexVector one = vectorize(ComplexMatrix::Identity(2, 2));
  const double trace_defect = max_abs(ComplexMatrix(one.transpose() * s.mat() - one.transpose()));
  if (!flags.hermitian || trace_defect > tol) {
    throw Error("affine_of: superoperator is not hermiticity and trace preserving");
  }
  const auto& sig = pauli_matrices();
  AffineMap m;
  const ComplexMatrix image_one = dmsym::apply(s, ComplexMatrix::Identity(2, 2));
  for (int i = 0; i < 3; ++i) {
    m.kappa(i) = 0.5 * (sig[static_cast<std::size_t>(i)] * image_one).trace().real();
    for (int j = 0; j < 3; ++j) {
      const ComplexMatrix image = dmsym::apply(s, sig[static_cast<std::size_t>(j)]);
      m.a(i, j) = 0.5 * (sig[static_cast<std::size_t>(i)] * image).trace().real();
    }
  }
  const Eigen::Matrix3d off = m.a - Eigen::Matrix3d(m.a.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() <= tol) {
    m.eta = m.a.diagonal().cwiseAbs();
  } else {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m.a);
    m.eta = svd.singularValues();
  }
  return m;
}

std::string to_string(CpVerdict v) {
  switch (v) {
    case CpVerdict::CP: return "CP";
    case CpVerdict::NotCP: return "NotCP";
    case CpVerdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

CpVerdict fujiwara_algoet_cp(const AffineMap& m, double tol) {
  if (m.kappa.cwiseAbs().maxCoeff() > tol) return CpVerdict::NotApplicable;
  if (m.a.determinant() < -tol) return CpVerdict::NotApplicable;
  const double ex = m.eta(0);
  const double ey = m.eta(1);
  const double ez = m.eta(2);
  const bool plus = (ex + ey) * (ex + ey) <= (1.0 + ez) * (1.0 + ez) + tol;
  const bool minus = (ex - ey) * (ex - ey) <= (1.0 - ez) * (1.0 - ez) + tol;
  const bool bounded = ez <= 1.0 + tol;
  return (plus && minus && bounded) ? CpVerdict::CP : CpVerdict::NotCP;
}

ComplexMatrix choi_matrix(const Superoperator& s) {
  const int n = s.n();
  ComplexMatrix c(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) c(k * n + i, l * n + j) = s(i * n + j, k * n + l);
  return c;
}

ChoiResult choi_cp(const Superoperator& s, double tol) {
  if (!check_conditions(s, tol).hermitian) {
    throw Error("choi_cp: superoperator is not hermiticity preserving");
  }
  const ComplexMatrix c = choi_matrix(s);
  // Symmetrize away rounding before the Hermitian solver.
  const ComplexMatrix h = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  ChoiResult out;
  out.min_eigenvalue = solver.eigenvalues().minCoeff();
  out.verdict = out.min_eigenvalue >= -tol ? CpVerdict::CP : CpVerdict::NotCP;
  return out;
}

ParamInterval positivity_range(const GeneratorId& id, const BlochVector& r) {
  require_qubit_id(id, "positivity_range");
  require_in_ball(r, "positivity_range");
  ParamInterval out;
  switch (id.kind) {
    case GeneratorKind::Rotation:
      return out;
    case GeneratorKind::Dilation: {
      const int a = id.i - 1;
      const double perp2 = r.norm_squared() - r[a] * r[a];
      if (perp2 <= 0.0) return out;
      const double room = std::max(0.0, 1.0 - r[a] * r[a]);
      out.hi = 0.5 * std::log(room / perp2);
      return out;
    }
    case GeneratorKind::HSym: {
      // |r'_ij|^2 = A cosh(2 phi) - B sinh(2 phi) with A = a^2 + b^2, B = 2ab.
      const double a = r[id.i - 1];
      const double b = r[id.j - 1];
      const double rk = r[6 - id.i - id.j - 1];
      const double room = std::max(0.0, 1.0 - rk * rk);
      const double big_a = a * a + b * b;
      const double big_b = 2.0 * a * b;
      if (big_a <= 0.0) return out;
      const double c = std::abs(a * a - b * b);
      if (c <= 1e-14 * big_a) {
        // A (cosh u -+ sinh u) = A exp(-+u)
        const double bound = 0.5 * std::log(room / big_a);
        if (big_b > 0.0) {
          out.lo = -bound;
        } else {
          out.hi = bound;
        }
        return out;
      }
      const double u0 = std::atanh(big_b / big_a);
      const double w = std::acosh(std::max(1.0, room / c));
      out.lo = 0.5 * (u0 - w);
      out.hi = 0.5 * (u0 + w);
      return out;
    }
    case GeneratorKind::PAnti: {
      const int k = 6 - id.i - id.j;
      const double rk = r[k - 1];
      const double half = std::sqrt(std::max(0.0, 1.0 - (r.norm_squared() - rk * rk)));
      const double lo = 0.5 * (-half - rk);
      const double hi = 0.5 * (half - rk);
      if (levi_civita(id.i, id.j, k) > 0) {
        out.lo = lo;
        out.hi = hi;
      } else {
        out.lo = -hi;
        out.hi = -lo;
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

Superoperator adjoint_map(const Superoperator& s) {
  Eigen::FullPivLU<ComplexMatrix> lu(s.mat());
  if (!lu.isInvertible()) throw Error("adjoint_map: superoperator is singular");
  return transpose(s);
}

}  // namespace dmsym
