#include "dmsym/basis.hpp"

#include <algorithm>
#include <cmath>

namespace dmsym {

const std::array<ComplexMatrix, 3>& pauli_matrices() {
  static const std::array<ComplexMatrix, 3> sigma = [] {
    std::array<ComplexMatrix, 3> s;
    s[0] = ComplexMatrix::Zero(2, 2);
    s[0](0, 1) = 1.0;
    s[0](1, 0) = 1.0;
    s[1] = ComplexMatrix::Zero(2, 2);
    s[1](0, 1) = -kI;
    s[1](1, 0) = kI;
    s[2] = ComplexMatrix::Zero(2, 2);
    s[2](0, 0) = 1.0;
    s[2](1, 1) = -1.0;
    return s;
  }();
  return sigma;
}

BasisSet::BasisSet(int n) : n_(n) {
  if (n < 2 || n > kMaxDim) {
    throw DimensionError("gellmann_basis: dimension " + std::to_string(n) +
                         " outside supported range [2, " + std::to_string(kMaxDim) + "]");
  }
  mats_.reserve(static_cast<std::size_t>(n * n - 1));
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      ComplexMatrix s = ComplexMatrix::Zero(n, n);
      s(j, k) = 0.5;
      s(k, j) = 0.5;
      mats_.push_back(std::move(s));

      ComplexMatrix a = ComplexMatrix::Zero(n, n);
      a(j, k) = -0.5 * kI;
      a(k, j) = 0.5 * kI;
      mats_.push_back(std::move(a));
    }
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    const double scale = 0.5 * std::sqrt(2.0 / (k * (k + 1.0)));
    for (int j = 0; j < k; ++j) diag(j, j) = scale;
    diag(k, k) = -k * scale;
    mats_.push_back(std::move(diag));
  }
}

StructureTensors::StructureTensors(const BasisSet& basis) : m_(basis.size()) {
  const auto total = static_cast<std::size_t>(m_) * m_ * m_;
  f_.assign(total, 0.0);
  d_.assign(total, 0.0);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) {
      const ComplexMatrix prod = basis[i] * basis[j];
      const ComplexMatrix rprod = basis[j] * basis[i];
      const ComplexMatrix comm = prod - rprod;
      const ComplexMatrix anti = prod + rprod;
      for (int k = 0; k < m_; ++k) {
        // Tr(l_k X) = sum of elementwise products with l_k^t.
        const Complex fc = -2.0 * kI * (basis[k].transpose().cwiseProduct(comm)).sum();
        const Complex dc = 2.0 * (basis[k].transpose().cwiseProduct(anti)).sum();
        imaginary_residue_ = std::max({imaginary_residue_, std::abs(fc.imag()), std::abs(dc.imag())});
        f_[index(i, j, k)] = fc.real();
        d_[index(i, j, k)] = dc.real();
      }
    }
  }
  if (imaginary_residue_ > 1e-13) {
    throw Error("structure_tensors: imaginary residue " + std::to_string(imaginary_residue_) +
                " exceeds 1e-13");
  }
}

double TensorIdentityReport::max_residual() const {
  return std::max({cyclic_df, cyclic_ff, ff_dd, product_law, commutator_law, symmetry, imaginary});
}

TensorIdentityReport verify_tensor_identities(int n) {
  const BasisSet basis(n);
  const StructureTensors t(basis);
  const int m = basis.size();
  TensorIdentityReport rep;
  rep.n = n;
  rep.imaginary = t.imaginary_residue();

  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double f = t.f(i, j, k);
        const double d = t.d(i, j, k);
        for (const double g : {-t.f(j, i, k), t.f(j, k, i), t.f(k, i, j), -t.f(i, k, j), -t.f(k, j, i)})
          rep.symmetry = std::max(rep.symmetry, std::abs(f - g));
        for (const double g : {t.d(j, i, k), t.d(j, k, i), t.d(k, i, j), t.d(i, k, j), t.d(k, j, i)})
          rep.symmetry = std::max(rep.symmetry, std::abs(d - g));
      }

  // Four free indices; contraction over r.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int e = 0; e < m; ++e) {
          // (i) d_r(ns f_m)ir with (n, s, m, i) = (a, b, c, e).
          // (ii) f_r(im f_n)sr with (i, m, n, s) = (a, b, c, e).
          // (iii) with (i, j, m, n) = (a, b, c, e).
          double df = 0.0, ff = 0.0, lhs = 0.0, dd = 0.0;
          for (int r = 0; r < m; ++r) {
            df += t.d(r, a, b) * t.f(c, e, r) + t.d(r, c, a) * t.f(b, e, r) +
                  t.d(r, b, c) * t.f(a, e, r);
            ff += t.f(r, a, b) * t.f(c, e, r) + t.f(r, b, c) * t.f(a, e, r) +
                  t.f(r, c, a) * t.f(b, e, r);
            lhs += t.f(a, b, r) * t.f(c, e, r);
            dd += t.d(a, c, r) * t.d(b, e, r) - t.d(a, e, r) * t.d(b, c, r);
          }
          const double rhs = (2.0 / n) * (delta(a, c) * delta(b, e) - delta(a, e) * delta(b, c)) + dd;
          rep.cyclic_df = std::max(rep.cyclic_df, std::abs(df));
          rep.cyclic_ff = std::max(rep.cyclic_ff, std::abs(ff));
          rep.ff_dd = std::max(rep.ff_dd, std::abs(lhs - rhs));
        }

  const ComplexMatrix one = ComplexMatrix::Identity(n, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      ComplexMatrix expanded = (delta(i, j) / (2.0 * n)) * one;
      ComplexMatrix comm = ComplexMatrix::Zero(n, n);
      for (int k = 0; k < m; ++k) {
        expanded += (0.5 * t.d(i, j, k) + 0.5 * kI * t.f(i, j, k)) * basis[k];
        comm += (kI * t.f(i, j, k)) * basis[k];
      }
      rep.product_law = std::max(rep.product_law, max_abs(basis[i] * basis[j] - expanded));
      rep.commutator_law = std::max(
          rep.commutator_law, max_abs(basis[i] * basis[j] - basis[j] * basis[i] - comm));
    }
  return rep;
}

}  // namespace dmsym
