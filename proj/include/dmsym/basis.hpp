#pragma once

// Pauli matrices, generalized Gell-Mann (lambda) matrices normalized to
// Tr(l_i l_j) = delta_ij / 2, and their structure tensors:
//
//   l_i l_j = delta_ij / (2N) 1 + (1/2) d_ijk l_k + (i/2) f_ijk l_k
//
// Basis vectors and tensor indices are 0-based here. Physics labels used by
// the generator layer (iR_3, H_12, ...) are 1-based.
//
// Ordering (frozen, f/d values depend on it): for each level k = 1..N-1, the
// pairs (j, k) with j < k contribute a symmetric matrix then an antisymmetric
// one, followed by the diagonal matrix of level k. This is the usual SU(3)
// ordering, so f_123 = 1 and d_118 = 1/sqrt(3) at N = 3, and l_i = sigma_i / 2
// at N = 2.

#include <array>
#include <vector>

#include "dmsym/linops.hpp"

namespace dmsym {

/// (sigma_1, sigma_2, sigma_3).
const std::array<ComplexMatrix, 3>& pauli_matrices();

class BasisSet {
 public:
  /// Throws DimensionError unless 2 <= n <= kMaxDim.
  explicit BasisSet(int n);

  int n() const { return n_; }
  /// N^2 - 1.
  int size() const { return static_cast<int>(mats_.size()); }
  const ComplexMatrix& operator[](int i) const { return mats_[static_cast<std::size_t>(i)]; }
  const std::vector<ComplexMatrix>& mats() const { return mats_; }

 private:
  int n_;
  std::vector<ComplexMatrix> mats_;
};

inline BasisSet gellmann_basis(int n) { return BasisSet(n); }

/// Dense f (totally antisymmetric) and d (totally symmetric) tensors.
class StructureTensors {
 public:
  StructureTensors() = default;
  explicit StructureTensors(const BasisSet& basis);

  int size() const { return m_; }
  double f(int i, int j, int k) const { return f_[index(i, j, k)]; }
  double d(int i, int j, int k) const { return d_[index(i, j, k)]; }
  /// Largest imaginary part discarded when the tensors were formed.
  double imaginary_residue() const { return imaginary_residue_; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * m_ + j) * m_ + k;
  }

  int m_ = 0;
  std::vector<double> f_;
  std::vector<double> d_;
  double imaginary_residue_ = 0.0;
};

inline StructureTensors structure_tensors(const BasisSet& basis) {
  return StructureTensors(basis);
}

/// Max absolute residuals of the structure-tensor identities.
struct TensorIdentityReport {
  int n = 0;
  double cyclic_df = 0.0;      // d_r(ns f_m)ir = 0
  double cyclic_ff = 0.0;      // f_r(im f_n)sr = 0
  double ff_dd = 0.0;          // f_ijr f_mnr = (2/N)(dd - dd) + d_imr d_jnr - d_inr d_jmr
  double product_law = 0.0;    // l_i l_j expanded in {1, l_k}
  double commutator_law = 0.0; // [l_i, l_j] = i f_ijk l_k
  double symmetry = 0.0;       // total (anti)symmetry of f and d
  double imaginary = 0.0;      // imaginary parts discarded from f and d

  double max_residual() const;
};

/// Checks all index combinations; intended for 2 <= n <= 4.
TensorIdentityReport verify_tensor_identities(int n);

}  // namespace dmsym
