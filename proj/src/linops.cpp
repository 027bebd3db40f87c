#include "dmsym/linops.hpp"

#include <cmath>
#include <limits>

namespace dmsym {

namespace {

void require_same_dim(const Superoperator& a, const Superoperator& b, const char* what) {
  if (a.n() != b.n()) {
    throw DimensionError(std::string(what) + ": superoperator dimensions differ (" +
                         std::to_string(a.n()) + " vs " + std::to_string(b.n()) + ")");
  }
}

double norm1(const ComplexMatrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

Superoperator::Superoperator(int n, ComplexMatrix mat) : n_(n), mat_(std::move(mat)) {
  if (n < 1) throw DimensionError("Superoperator: dimension must be >= 1");
  if (mat_.rows() != n * n || mat_.cols() != n * n) {
    throw DimensionError("Superoperator: matrix must be " + std::to_string(n * n) + "x" +
                         std::to_string(n * n));
  }
}

Superoperator Superoperator::zero(int n) {
  return Superoperator(n, ComplexMatrix::Zero(n * n, n * n));
}

Superoperator Superoperator::identity(int n) {
  return Superoperator(n, ComplexMatrix::Identity(n * n, n * n));
}

Superoperator& Superoperator::operator+=(const Superoperator& other) {
  require_same_dim(*this, other, "operator+");
  mat_ += other.mat_;
  return *this;
}

Superoperator& Superoperator::operator-=(const Superoperator& other) {
  require_same_dim(*this, other, "operator-");
  mat_ -= other.mat_;
  return *this;
}

Superoperator& Superoperator::operator*=(Complex s) {
  mat_ *= s;
  return *this;
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  require_same_dim(a, b, "operator*");
  return Superoperator(a.n(), a.mat() * b.mat());
}

ComplexVector vectorize(const ComplexMatrix& m) {
  const auto n = m.rows();
  ComplexVector v(n * m.cols());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

ComplexMatrix unvectorize(const ComplexVector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) {
    throw DimensionError("unvectorize: length is not n^2");
  }
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  return m;
}

Superoperator kron_super(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("kron_super: operands must be square and of equal dimension");
  }
  const auto n = static_cast<int>(a.rows());
  ComplexMatrix k(n * n, n * n);
  // (a (x) b^t)[(i,j),(k,l)] = a(i,k) * b(l,j)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) k(i * n + j, p * n + q) = a(i, p) * b(q, j);
  return Superoperator(n, std::move(k));
}

ComplexMatrix apply(const Superoperator& s, const ComplexMatrix& m) {
  if (m.rows() != s.n() || m.cols() != s.n()) {
    throw DimensionError("apply: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", superoperator acts on " +
                         std::to_string(s.n()) + "x" + std::to_string(s.n()));
  }
  return unvectorize(s.mat() * vectorize(m), s.n());
}

// Index permutations on the rank-4 view S[(i,j),(k,l)].
Superoperator transpose(const Superoperator& s) {
  const int n = s.n();
  ComplexMatrix t(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) t(i * n + j, k * n + l) = s(l * n + k, j * n + i);
  return Superoperator(n, std::move(t));
}

Superoperator adjoint(const Superoperator& s) {
  return Superoperator(s.n(), s.mat().adjoint());
}

Superoperator associate(const Superoperator& s) {
  const int n = s.n();
  ComplexMatrix t(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) t(i * n + j, k * n + l) = std::conj(s(j * n + i, l * n + k));
  return Superoperator(n, std::move(t));
}

Superoperator commutator(const Superoperator& a, const Superoperator& b) {
  require_same_dim(a, b, "commutator");
  return Superoperator(a.n(), a.mat() * b.mat() - b.mat() * a.mat());
}

ComplexMatrix expm(const ComplexMatrix& m, double scale) {
  if (m.rows() != m.cols()) throw DimensionError("expm: matrix must be square");
  if (!std::isfinite(scale) || !all_finite(m)) throw Error("expm: non-finite input");

  ComplexMatrix a = scale * m;
  const auto dim = a.rows();
  const double norm = norm1(a);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  a /= std::ldexp(1.0, squarings);

  // Taylor series until the next term drops below machine precision
  // relative to the partial sum.
  ComplexMatrix sum = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix term = ComplexMatrix::Identity(dim, dim);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int k = 1; k <= 64; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (norm1(term) <= eps * norm1(sum)) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Superoperator expm(const Superoperator& s, double scale) {
  return Superoperator(s.n(), expm(s.mat(), scale));
}

Superoperator inverse(const Superoperator& s) {
  Eigen::FullPivLU<ComplexMatrix> lu(s.mat());
  if (!lu.isInvertible()) throw Error("inverse: superoperator is singular");
  return Superoperator(s.n(), lu.inverse());
}

Complex trace_pairing(const Superoperator& x, const Superoperator& y) {
  require_same_dim(x, y, "trace_pairing");
  // Tr(X^dagger Y) without forming the product.
  return (x.mat().conjugate().cwiseProduct(y.mat())).sum();
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

}  // namespace dmsym
