#include "dmsym/generators.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace dmsym {

namespace {

int levi_civita(int i, int j, int k) {
  // 1-based, i, j, k in {1, 2, 3}
  return (i - j) * (j - k) * (k - i) / 2;
}

int third_axis(int i, int j) { return 6 - i - j; }

const char* kind_letter(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Rotation: return "R";
    case GeneratorKind::Dilation: return "D";
    case GeneratorKind::HSym: return "H";
    case GeneratorKind::PAnti: return "P";
  }
  return "?";
}

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    throw std::invalid_argument("malformed generator label '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::string GeneratorId::label() const {
  std::string out = kind_letter(kind);
  if (kind == GeneratorKind::Rotation || kind == GeneratorKind::Dilation) {
    return out + std::to_string(i);
  }
  if (i > 9 || j > 9) return out + std::to_string(i) + "_" + std::to_string(j);
  return out + std::to_string(i) + std::to_string(j);
}

void GeneratorId::validate() const {
  if (n < 2 || n > kMaxDim) {
    throw std::invalid_argument("generator " + label() + ": unsupported dimension " + std::to_string(n));
  }
  const int m = n * n - 1;
  auto in_range = [m](int v) { return v >= 1 && v <= m; };
  switch (kind) {
    case GeneratorKind::Rotation:
      if (!in_range(i)) throw std::invalid_argument("generator " + label() + ": index out of range");
      return;
    case GeneratorKind::Dilation:
      if (n != 2) throw std::invalid_argument("dilation generators D_i exist only at N = 2");
      if (!in_range(i)) throw std::invalid_argument("generator " + label() + ": index out of range");
      return;
    case GeneratorKind::HSym:
      if (!in_range(i) || !in_range(j) || i > j) {
        throw std::invalid_argument("generator " + label() + ": need 1 <= i <= j <= " + std::to_string(m));
      }
      return;
    case GeneratorKind::PAnti:
      if (!in_range(i) || !in_range(j) || i >= j) {
        throw std::invalid_argument("generator " + label() + ": need 1 <= i < j <= " + std::to_string(m));
      }
      return;
  }
}

GeneratorId parse_generator_id(std::string_view label, int n) {
  std::string_view s = label;
  if (s.size() >= 2 && s[0] == 'i' && s[1] == 'R') s.remove_prefix(1);
  if (s.empty()) throw std::invalid_argument("empty generator label");
  GeneratorId id;
  id.n = n;
  switch (std::toupper(static_cast<unsigned char>(s[0]))) {
    case 'R': id.kind = GeneratorKind::Rotation; break;
    case 'D': id.kind = GeneratorKind::Dilation; break;
    case 'H': id.kind = GeneratorKind::HSym; break;
    case 'P': id.kind = GeneratorKind::PAnti; break;
    default: throw std::invalid_argument("unknown generator kind in '" + std::string(label) + "'");
  }
  s.remove_prefix(1);
  if (id.kind == GeneratorKind::Rotation || id.kind == GeneratorKind::Dilation) {
    id.i = parse_int(s, label);
  } else {
    const auto sep = s.find_first_of("_,");
    if (sep != std::string_view::npos) {
      id.i = parse_int(s.substr(0, sep), label);
      id.j = parse_int(s.substr(sep + 1), label);
    } else if (s.size() == 2) {
      id.i = parse_int(s.substr(0, 1), label);
      id.j = parse_int(s.substr(1, 1), label);
    } else {
      throw std::invalid_argument("malformed generator label '" + std::string(label) + "'");
    }
  }
  id.validate();
  return id;
}

// ---------------------------------------------------------------------------

GeneratorAlgebra::GeneratorAlgebra(int n) : basis_(n), tensors_(basis_) {
  const ComplexMatrix one = ComplexMatrix::Identity(n, n);
  rot_.reserve(static_cast<std::size_t>(basis_.size()));
  lsum_.reserve(static_cast<std::size_t>(basis_.size()));
  for (const auto& l : basis_.mats()) {
    const Superoperator left = kron_super(l, one);
    const Superoperator right = kron_super(one, l);
    rot_.push_back(kI * (left - right));
    lsum_.push_back(left + right);
  }
}

std::size_t GeneratorAlgebra::idx(int label) const {
  if (label < 1 || label > size()) {
    throw std::invalid_argument("generator index " + std::to_string(label) + " outside 1.." +
                                std::to_string(size()));
  }
  return static_cast<std::size_t>(label - 1);
}

Superoperator GeneratorAlgebra::t_sym(int i, int j) const {
  const auto& li = basis_[static_cast<int>(idx(i))];
  const auto& lj = basis_[static_cast<int>(idx(j))];
  return kron_super(li, lj) + kron_super(lj, li);
}

Superoperator GeneratorAlgebra::a_anti(int i, int j) const {
  const auto& li = basis_[static_cast<int>(idx(i))];
  const auto& lj = basis_[static_cast<int>(idx(j))];
  return kron_super(li, lj) - kron_super(lj, li);
}

Superoperator GeneratorAlgebra::hsym(int i, int j) const {
  Superoperator h = 2.0 * t_sym(i, j);
  const int a = i - 1;
  const int b = j - 1;
  for (int k = 0; k < size(); ++k) {
    const double d = tensors_.d(a, b, k);
    if (d != 0.0) h -= d * lsum_[static_cast<std::size_t>(k)];
  }
  if (i == j) h -= (2.0 / n()) * Superoperator::identity(n());
  return h;
}

Superoperator GeneratorAlgebra::panti(int i, int j) const {
  Superoperator p = (2.0 * kI) * a_anti(i, j);
  const int a = i - 1;
  const int b = j - 1;
  for (int k = 0; k < size(); ++k) {
    const double f = tensors_.f(a, b, k);
    if (f != 0.0) p -= f * lsum_[static_cast<std::size_t>(k)];
  }
  return p;
}

Superoperator GeneratorAlgebra::generator(const GeneratorId& id) const {
  if (id.n != n()) throw DimensionError("GeneratorAlgebra: id dimension differs from algebra");
  id.validate();
  switch (id.kind) {
    case GeneratorKind::Rotation: return rotation(id.i);
    case GeneratorKind::Dilation: return 0.5 * hsym(id.i, id.i);
    case GeneratorKind::HSym: return hsym(id.i, id.j);
    case GeneratorKind::PAnti: return panti(id.i, id.j);
  }
  throw std::logic_error("unreachable");
}

Superoperator sigma_generator(const GeneratorId& id) {
  if (id.n != 2) throw std::invalid_argument("sigma_generator: N = 2 only");
  const auto& s = pauli_matrices();
  const ComplexMatrix one = ComplexMatrix::Identity(2, 2);
  auto sig = [&](int a) -> const ComplexMatrix& { return s[static_cast<std::size_t>(a - 1)]; };
  switch (id.kind) {
    case GeneratorKind::Rotation:
      id.validate();
      return (0.5 * kI) * (kron_super(sig(id.i), one) - kron_super(one, sig(id.i)));
    case GeneratorKind::Dilation:
      id.validate();
      return 0.5 * (kron_super(sig(id.i), sig(id.i)) - Superoperator::identity(2));
    case GeneratorKind::HSym:
    case GeneratorKind::PAnti: {
      const bool ok = id.i >= 1 && id.i <= 3 && id.j >= 1 && id.j <= 3 && id.i != id.j;
      if (!ok) throw std::invalid_argument("sigma_generator: " + id.label() + " needs i != j in 1..3");
      const Superoperator ij = kron_super(sig(id.i), sig(id.j));
      const Superoperator ji = kron_super(sig(id.j), sig(id.i));
      if (id.kind == GeneratorKind::HSym) return 0.5 * (ij + ji);
      const int k = third_axis(id.i, id.j);
      const double eps = levi_civita(id.i, id.j, k);
      return (0.5 * kI) * (ij - ji) -
             (0.5 * eps) * (kron_super(sig(k), one) + kron_super(one, sig(k)));
    }
  }
  throw std::logic_error("unreachable");
}

Superoperator generator(const GeneratorId& id) {
  id.validate();
  if (id.n == 2 && !(id.kind == GeneratorKind::HSym && id.i == id.j)) return sigma_generator(id);
  return GeneratorAlgebra(id.n).generator(id);
}

std::vector<FamilyMember> generator_family(const GeneratorAlgebra& algebra) {
  const int n = algebra.n();
  const CoefficientVector layout(n, default_convention(n));
  std::vector<FamilyMember> family;
  family.reserve(layout.values().size());
  for (std::size_t k = 0; k < layout.values().size(); ++k) {
    const GeneratorId id = layout.id_at(k);
    family.push_back({id, algebra.generator(id)});
  }
  return family;
}

std::vector<FamilyMember> generator_family(int n) {
  return generator_family(GeneratorAlgebra(n));
}

ConditionFlags check_conditions(const Superoperator& g, double tol) {
  const int n = g.n();
  const ComplexVector one = vectorize(ComplexMatrix::Identity(n, n));
  const Superoperator gt = transpose(g);
  ConditionFlags flags;
  flags.hermitian_residual = max_abs(associate(g) - g);
  flags.trace_residual = max_abs(ComplexMatrix(one.transpose() * g.mat()));
  flags.unitary_residual =
      std::max(max_abs(adjoint(g) + g), max_abs(gt + g));
  flags.adjoint_identity_residual = max_abs(ComplexMatrix(gt.mat() * one));
  flags.hermitian = flags.hermitian_residual <= tol;
  flags.trace = flags.trace_residual <= tol;
  flags.unitary = flags.unitary_residual <= tol;
  flags.adjoint_identity = flags.adjoint_identity_residual <= tol;
  return flags;
}

// ---------------------------------------------------------------------------

CoefficientConvention default_convention(int n) {
  return n == 2 ? CoefficientConvention::Dilation : CoefficientConvention::Lambda;
}

CoefficientVector::CoefficientVector(int n, CoefficientConvention convention)
    : n_(n), m_(n * n - 1), convention_(convention) {
  if (n < 2 || n > kMaxDim) throw DimensionError("CoefficientVector: unsupported dimension");
  if (convention == CoefficientConvention::Dilation && n != 2) {
    throw std::invalid_argument("CoefficientVector: the D_i convention exists only at N = 2");
  }
  values_.assign(static_cast<std::size_t>(m_) * (m_ + 1), 0.0);
}

void CoefficientVector::check_label(int i) const {
  if (i < 1 || i > m_) {
    throw std::out_of_range("coefficient index " + std::to_string(i) + " outside 1.." +
                            std::to_string(m_));
  }
}

std::size_t CoefficientVector::alpha_index(int i, int j) const {
  check_label(i);
  check_label(j);
  if (i > j) std::swap(i, j);
  const int a = i - 1;
  const int b = j - 1;
  // row a of the upper triangle (diagonal included) has m - a entries
  const int offset = m_ + a * m_ - a * (a - 1) / 2 + (b - a);
  return static_cast<std::size_t>(offset);
}

std::size_t CoefficientVector::beta_index(int i, int j) const {
  check_label(i);
  check_label(j);
  if (i >= j) throw std::out_of_range("beta(i, j) requires i < j");
  const int a = i - 1;
  const int b = j - 1;
  // row a of the strict upper triangle has m - 1 - a entries
  const int offset = m_ + m_ * (m_ + 1) / 2 + a * (m_ - 1) - a * (a - 1) / 2 + (b - a - 1);
  return static_cast<std::size_t>(offset);
}

double& CoefficientVector::omega(int i) {
  check_label(i);
  return values_[static_cast<std::size_t>(i - 1)];
}
double CoefficientVector::omega(int i) const {
  check_label(i);
  return values_[static_cast<std::size_t>(i - 1)];
}
double& CoefficientVector::alpha(int i, int j) { return values_[alpha_index(i, j)]; }
double CoefficientVector::alpha(int i, int j) const { return values_[alpha_index(i, j)]; }
double& CoefficientVector::beta(int i, int j) { return values_[beta_index(i, j)]; }
double CoefficientVector::beta(int i, int j) const { return values_[beta_index(i, j)]; }

GeneratorId CoefficientVector::id_at(std::size_t k) const {
  const std::size_t m = static_cast<std::size_t>(m_);
  if (k < m) return GeneratorId::rotation(static_cast<int>(k) + 1, n_);
  k -= m;
  for (int i = 1; i <= m_; ++i) {
    const std::size_t row = m - static_cast<std::size_t>(i - 1);
    if (k < row) {
      const int j = i + static_cast<int>(k);
      if (i == j && convention_ == CoefficientConvention::Dilation) return GeneratorId::dilation(i);
      return GeneratorId::hsym(i, j, n_);
    }
    k -= row;
  }
  for (int i = 1; i < m_; ++i) {
    const std::size_t row = m - static_cast<std::size_t>(i);
    if (k < row) return GeneratorId::panti(i, i + 1 + static_cast<int>(k), n_);
    k -= row;
  }
  throw std::out_of_range("CoefficientVector::id_at: index past end");
}

std::string CoefficientVector::name_at(std::size_t k) const {
  const GeneratorId id = id_at(k);
  const std::string sep = (id.i > 9 || id.j > 9) ? "_" : "";
  switch (id.kind) {
    case GeneratorKind::Rotation: return "omega" + std::to_string(id.i);
    case GeneratorKind::Dilation: return "alpha" + std::to_string(id.i) + std::to_string(id.i);
    case GeneratorKind::HSym: return "alpha" + std::to_string(id.i) + sep + std::to_string(id.j);
    case GeneratorKind::PAnti: return "beta" + std::to_string(id.i) + sep + std::to_string(id.j);
  }
  return "?";
}

CoefficientVector CoefficientVector::to_convention(CoefficientConvention target) const {
  CoefficientVector out(n_, target);
  out.values_ = values_;
  if (target == convention_) return out;
  const double factor = (target == CoefficientConvention::Dilation) ? 2.0 : 0.5;
  for (int i = 1; i <= m_; ++i) out.alpha(i, i) *= factor;
  return out;
}

double CoefficientVector::max_abs_difference(const CoefficientVector& other) const {
  if (other.n_ != n_) throw DimensionError("CoefficientVector: dimension mismatch");
  const CoefficientVector rhs = other.to_convention(convention_);
  double worst = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    worst = std::max(worst, std::abs(values_[k] - rhs.values_[k]));
  }
  return worst;
}

Superoperator assemble_generator(const CoefficientVector& c, const GeneratorAlgebra& algebra) {
  if (c.n() != algebra.n()) throw DimensionError("assemble_generator: dimension mismatch");
  Superoperator k = Superoperator::zero(c.n());
  for (std::size_t idx = 0; idx < c.values().size(); ++idx) {
    const double v = c.values()[idx];
    if (v != 0.0) k += v * algebra.generator(c.id_at(idx));
  }
  return k;
}

Superoperator assemble_generator(const CoefficientVector& c) {
  return assemble_generator(c, GeneratorAlgebra(c.n()));
}

namespace {

constexpr double kImaginaryTol = 1e-11;

double real_part(Complex value, const std::string& what) {
  if (std::abs(value.imag()) > kImaginaryTol) {
    throw CoefficientError("extract_coefficients: " + what + " has imaginary part " +
                           std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace

CoefficientVector extract_coefficients(const Superoperator& k, const GeneratorAlgebra& algebra,
                                       std::optional<CoefficientConvention> convention) {
  if (k.n() != algebra.n()) throw DimensionError("extract_coefficients: dimension mismatch");
  const ConditionFlags flags = check_conditions(k);
  if (!flags.hermitian || !flags.trace) {
    throw CoefficientError("extract_coefficients: input violates the " +
                           std::string(!flags.hermitian ? "hermitian" : "trace") +
                           " condition (residual " +
                           std::to_string(!flags.hermitian ? flags.hermitian_residual
                                                           : flags.trace_residual) +
                           ")");
  }
  const int n = algebra.n();
  const int m = algebra.size();
  CoefficientVector c(n, CoefficientConvention::Lambda);
  for (int i = 1; i <= m; ++i) {
    c.omega(i) = real_part(trace_pairing(algebra.rotation(i), k), c.name_at(static_cast<std::size_t>(i - 1))) / n;
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      const Complex pairing = trace_pairing(algebra.t_sym(i, j), k);
      const double scale = (i == j) ? 0.5 : 1.0;
      c.alpha(i, j) = scale * real_part(pairing, "alpha" + std::to_string(i) + "," + std::to_string(j));
    }
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      const Complex pairing = trace_pairing(kI * algebra.a_anti(i, j), k);
      c.beta(i, j) = real_part(pairing, "beta" + std::to_string(i) + "," + std::to_string(j));
    }
  }
  return c.to_convention(convention.value_or(default_convention(n)));
}

CoefficientVector extract_coefficients(const Superoperator& k,
                                       std::optional<CoefficientConvention> convention) {
  return extract_coefficients(k, GeneratorAlgebra(k.n()), convention);
}

CoefficientVector commutator_decompose(const Superoperator& f, const Superoperator& g,
                                       const GeneratorAlgebra& algebra,
                                       std::optional<CoefficientConvention> convention) {
  const Superoperator comm = commutator(f, g);
  CoefficientVector c(algebra.n(), convention.value_or(default_convention(algebra.n())));
  try {
    c = extract_coefficients(comm, algebra, convention);
  } catch (const CoefficientError& e) {
    throw ClosureError(std::string("commutator_decompose: commutator outside the generator span: ") +
                       e.what());
  }
  const double residual = max_abs(assemble_generator(c, algebra) - comm);
  if (residual > kClosureTol) {
    throw ClosureError("commutator_decompose: closure residual " + std::to_string(residual) +
                       " exceeds " + std::to_string(kClosureTol));
  }
  return c;
}

}  // namespace dmsym
