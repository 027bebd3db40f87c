#pragma once

// Dense complex matrices and superoperators acting on N x N matrices.
//
// Vectorization is row-major: vec(m)[i*N + j] = m(i, j). Under this
// convention the elementary superoperator a x b, which acts as
// m -> a * m * b, is represented by the Kronecker product a (x) b^t, and the
// composition of superoperators is the ordinary matrix product.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dmsym {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest supported system dimension (superoperators up to 64 x 64).
inline constexpr int kMaxDim = 8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Linear map on N x N matrices stored as an N^2 x N^2 matrix.
class Superoperator {
 public:
  Superoperator() = default;
  /// Takes ownership of an N^2 x N^2 matrix; throws DimensionError otherwise.
  Superoperator(int n, ComplexMatrix mat);

  static Superoperator zero(int n);
  static Superoperator identity(int n);

  int n() const { return n_; }
  const ComplexMatrix& mat() const { return mat_; }
  Complex operator()(int row, int col) const { return mat_(row, col); }

  Superoperator& operator+=(const Superoperator& other);
  Superoperator& operator-=(const Superoperator& other);
  Superoperator& operator*=(Complex s);

  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator-(Superoperator a, const Superoperator& b) { return a -= b; }
  friend Superoperator operator-(Superoperator a) { return a *= -1.0; }
  friend Superoperator operator*(Complex s, Superoperator a) { return a *= s; }
  friend Superoperator operator*(double s, Superoperator a) { return a *= s; }
  friend Superoperator operator*(Superoperator a, Complex s) { return a *= s; }
  /// Composition: (a * b) m = a(b(m)).
  friend Superoperator operator*(const Superoperator& a, const Superoperator& b);

 private:
  int n_ = 0;
  ComplexMatrix mat_;
};

/// Row-major vectorization and its inverse.
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, int n);

/// Representation of a x b (acts as m -> a m b).
Superoperator kron_super(const ComplexMatrix& a, const ComplexMatrix& b);

// Call as dmsym::apply; unqualified calls can pick up std::apply through ADL.
/// Un-vectorized S.mat * vec(m).
ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& m);

/// Transposition: (mu a x b)^T = mu b x a. Converts right action into left
/// action, m A = A^T m.
Superoperator transpose(const Superoperator& s);
/// Adjunction: (mu a x b)^dagger = mu* a^dagger x b^dagger.
Superoperator adjoint(const Superoperator& s);
/// Association: transpose of the adjoint, (mu a x b)~ = mu* b^dagger x a^dagger.
Superoperator associate(const Superoperator& s);

Superoperator commutator(const Superoperator& a, const Superoperator& b);

/// exp(scale * m) by scaling and squaring of a truncated Taylor series.
/// Throws Error on non-finite input.
ComplexMatrix expm(const ComplexMatrix& m, double scale = 1.0);
Superoperator expm(const Superoperator& s, double scale);

/// Throws Error when S is numerically singular.
Superoperator inverse(const Superoperator& s);

/// Linear extension of ||X^dagger Y|| = Tr(a) Tr(b) on elementary terms,
/// i.e. Tr(X.mat^dagger * Y.mat). Complex in general; not a norm.
Complex trace_pairing(const Superoperator& x, const Superoperator& y);

/// Max-entry norm.
double max_abs(const ComplexMatrix& m);
inline double max_abs(const Superoperator& s) { return max_abs(s.mat()); }

bool all_finite(const ComplexMatrix& m);

}  // namespace dmsym
