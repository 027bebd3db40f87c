#pragma once

// Generators of hermiticity- and trace-preserving transformations
// S = exp(-theta G) on N-level density matrices.
//
// Two-level (sigma) forms:
//   iR_i  = (i/2)(s_i x 1 - 1 x s_i)
//   D_i   = (1/2)(s_i x s_i - I)
//   H_ij  = (1/2)(s_i x s_j + s_j x s_i),                    i != j
//   P_ij  = (i/2)(s_i x s_j - s_j x s_i) - (1/2) e_ijk (s_k x 1 + 1 x s_k)
//
// N-level (lambda) forms, with L_k = l_k x 1 + 1 x l_k,
// T_ij = l_i x l_j + l_j x l_i and A_ij = l_i x l_j - l_j x l_i:
//   iR_i  = i(l_i x 1 - 1 x l_i)
//   H_ij  = 2 T_ij - d_ijk L_k - (2/N) delta_ij I
//   P_ij  = 2i A_ij - f_ijk L_k
//
// At N = 2 the two agree except H_ii = 2 D_i. Generator labels are 1-based.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmsym/basis.hpp"
#include "dmsym/linops.hpp"

namespace dmsym {

enum class GeneratorKind { Rotation, Dilation, HSym, PAnti };

struct GeneratorId {
  GeneratorKind kind = GeneratorKind::Rotation;
  int i = 1;
  int j = 0;  // unused for Rotation and Dilation
  int n = 2;

  static GeneratorId rotation(int i, int n = 2) { return {GeneratorKind::Rotation, i, 0, n}; }
  static GeneratorId dilation(int i) { return {GeneratorKind::Dilation, i, 0, 2}; }
  static GeneratorId hsym(int i, int j, int n = 2) { return {GeneratorKind::HSym, i, j, n}; }
  static GeneratorId panti(int i, int j, int n = 2) { return {GeneratorKind::PAnti, i, j, n}; }

  /// "R3", "D3", "H12", "P12"; indices joined by '_' when any exceeds 9.
  std::string label() const;
  /// Throws std::invalid_argument when indices are out of range or the
  /// kind does not exist at this dimension.
  void validate() const;

  friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
};

/// Parses labels produced by GeneratorId::label(); a leading 'i' on
/// rotations ("iR3") is accepted.
GeneratorId parse_generator_id(std::string_view label, int n = 2);

/// Basis, structure tensors and the elementary superoperators of one
/// dimension. Immutable after construction.
class GeneratorAlgebra {
 public:
  explicit GeneratorAlgebra(int n);

  int n() const { return basis_.n(); }
  /// N^2 - 1.
  int size() const { return basis_.size(); }
  const BasisSet& basis() const { return basis_; }
  const StructureTensors& tensors() const { return tensors_; }

  // Elementary pieces, 1-based labels.
  const Superoperator& rotation(int i) const { return rot_[idx(i)]; }
  const Superoperator& l_sum(int k) const { return lsum_[idx(k)]; }
  Superoperator t_sym(int i, int j) const;
  Superoperator a_anti(int i, int j) const;

  /// lambda-form H_ij for any ordered pair (symmetric in i, j).
  Superoperator hsym(int i, int j) const;
  /// lambda-form P_ij for any ordered pair (antisymmetric, P_ii = 0).
  Superoperator panti(int i, int j) const;

  /// lambda-form generator; Dilation(i) is resolved as H_ii / 2 at N = 2.
  Superoperator generator(const GeneratorId& id) const;

 private:
  std::size_t idx(int label) const;

  BasisSet basis_;
  StructureTensors tensors_;
  std::vector<Superoperator> rot_;
  std::vector<Superoperator> lsum_;
};

/// sigma-built two-level generator. Not defined for HSym(i,i).
Superoperator sigma_generator(const GeneratorId& id);

/// sigma forms at N = 2 (HSym(i,i) gives the lambda value 2 D_i), lambda
/// forms above.
Superoperator generator(const GeneratorId& id);

struct FamilyMember {
  GeneratorId id;
  Superoperator op;
};

/// All N^4 - N^2 generators in coefficient-vector order: iR_i, then H_ij for
/// i <= j, then P_ij for i < j. At N = 2 the diagonal H_ii slots hold D_i.
std::vector<FamilyMember> generator_family(int n);
std::vector<FamilyMember> generator_family(const GeneratorAlgebra& algebra);

struct ConditionFlags {
  bool hermitian = false;
  bool trace = false;
  bool unitary = false;
  bool adjoint_identity = false;
  double hermitian_residual = 0.0;
  double trace_residual = 0.0;
  double unitary_residual = 0.0;
  double adjoint_identity_residual = 0.0;
};

inline constexpr double kConditionTol = 1e-12;

/// hermitian: G~ = G; trace: Tr(G m) = 0 for all m; unitary: G^dagger =
/// G^T = -G; adjoint_identity: G^T 1 = 0. Max-entry norms against tol.
ConditionFlags check_conditions(const Superoperator& g, double tol = kConditionTol);

// ---------------------------------------------------------------------------
// Coefficient vectors.

/// Lambda: K = w_i iR_i + a_ij H_ij (i <= j) + b_ij P_ij (i < j).
/// Dilation (N = 2 only): the diagonal a_ii multiply D_i instead of H_ii,
/// so a_ii(Dilation) = 2 a_ii(Lambda).
enum class CoefficientConvention { Lambda, Dilation };

class CoefficientVector {
 public:
  explicit CoefficientVector(int n, CoefficientConvention convention = CoefficientConvention::Lambda);

  int n() const { return n_; }
  /// N^2 - 1.
  int size() const { return m_; }
  CoefficientConvention convention() const { return convention_; }

  double& omega(int i);
  double omega(int i) const;
  /// Either index order.
  double& alpha(int i, int j);
  double alpha(int i, int j) const;
  /// Requires i < j.
  double& beta(int i, int j);
  double beta(int i, int j) const;

  /// Flat layout aligned with generator_family(): omega, alpha (i <= j
  /// row-major), beta (i < j row-major).
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  /// Generator multiplied by values()[k] under this convention.
  GeneratorId id_at(std::size_t k) const;
  /// "omega3", "alpha12", "beta23", ...
  std::string name_at(std::size_t k) const;

  /// Lossless change of convention (N = 2 only for Dilation).
  CoefficientVector to_convention(CoefficientConvention target) const;

  double max_abs_difference(const CoefficientVector& other) const;

 private:
  std::size_t alpha_index(int i, int j) const;
  std::size_t beta_index(int i, int j) const;
  void check_label(int i) const;

  int n_;
  int m_;
  CoefficientConvention convention_;
  std::vector<double> values_;
};

CoefficientConvention default_convention(int n);

/// Linear sum over the family under c's convention.
Superoperator assemble_generator(const CoefficientVector& c, const GeneratorAlgebra& algebra);
Superoperator assemble_generator(const CoefficientVector& c);

class CoefficientError : public Error {
 public:
  using Error::Error;
};

/// Coefficients via the trace pairing against iR_i, T_ij and iA_ij.
/// Throws CoefficientError when K fails the hermitian or trace condition or
/// a coefficient has an imaginary part above 1e-11.
CoefficientVector extract_coefficients(const Superoperator& k, const GeneratorAlgebra& algebra,
                                       std::optional<CoefficientConvention> convention = {});
CoefficientVector extract_coefficients(const Superoperator& k,
                                       std::optional<CoefficientConvention> convention = {});

class ClosureError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kClosureTol = 1e-10;

/// Decomposes [F, G] into the family. Throws ClosureError when the
/// reassembled commutator misses [F, G] by more than kClosureTol.
CoefficientVector commutator_decompose(const Superoperator& f, const Superoperator& g,
                                       const GeneratorAlgebra& algebra,
                                       std::optional<CoefficientConvention> convention = {});

// ---------------------------------------------------------------------------
// Commutation tables.

struct CommutationReport {
  int n = 0;
  double rr = 0.0;  // [iR, iR]
  double rh = 0.0;  // [iR, H]
  double rp = 0.0;  // [iR, P]
  double hh = 0.0;  // [H, H]
  double hp = 0.0;  // [H, P]
  double pp = 0.0;  // [P, P]
  long pairs_checked = 0;

  double max_residual() const;
};

/// Evaluates the f/d right-hand sides of the closed commutation relations
/// for every generator pair and compares with the direct commutator.
CommutationReport verify_commutation_tables(int n);

}  // namespace dmsym
