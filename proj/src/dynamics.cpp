#include "dmsym/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dmsym {

namespace {

constexpr double kAssemblyTol = 1e-13;

const Superoperator& sig_gen(GeneratorId id) {
  // Two-level generators are immutable, so one copy each is shared.
  static const std::vector<Superoperator> table = [] {
    std::vector<Superoperator> t;
    for (int i = 1; i <= 3; ++i) t.push_back(sigma_generator(GeneratorId::rotation(i)));
    for (int i = 1; i <= 3; ++i) t.push_back(sigma_generator(GeneratorId::dilation(i)));
    t.push_back(sigma_generator(GeneratorId::hsym(1, 2)));
    t.push_back(sigma_generator(GeneratorId::panti(1, 2)));
    return t;
  }();
  switch (id.kind) {
    case GeneratorKind::Rotation: return table[static_cast<std::size_t>(id.i - 1)];
    case GeneratorKind::Dilation: return table[static_cast<std::size_t>(2 + id.i)];
    case GeneratorKind::HSym: return table[6];
    case GeneratorKind::PAnti: return table[7];
  }
  throw std::logic_error("unreachable");
}

const Superoperator& r3() { return sig_gen(GeneratorId::rotation(3)); }
const Superoperator& d1() { return sig_gen(GeneratorId::dilation(1)); }
const Superoperator& d2() { return sig_gen(GeneratorId::dilation(2)); }
const Superoperator& d3() { return sig_gen(GeneratorId::dilation(3)); }
const Superoperator& p12() { return sig_gen(GeneratorId::panti(1, 2)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void DampingParams::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw std::invalid_argument("omega0 must be > 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be > 0");
  if (!(b >= 0.5) || !std::isfinite(b)) {
    throw std::invalid_argument("b must be >= 1/2 (b = n + 1/2 with n >= 0), got " + fmt(b));
  }
}

DampingParams DampingParams::from_temperature(double omega0, double gamma, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
  DampingParams p{omega0, gamma, 0.5 / std::tanh(omega0 / (2.0 * temperature))};
  p.validate();
  return p;
}

Superoperator amplitude_damping_lindblad(const DampingParams& p) {
  const auto& s = pauli_matrices();
  const ComplexMatrix one = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix sp = 0.5 * (s[0] + kI * s[1]);
  const ComplexMatrix sm = 0.5 * (s[0] - kI * s[1]);
  const double n = p.occupation();
  const Superoperator coherent =
      (kI * (p.omega0 / 2.0)) * (kron_super(s[2], one) - kron_super(one, s[2]));
  const ComplexMatrix mp = sm * sp;
  const ComplexMatrix pm = sp * sm;
  const Superoperator up = 2.0 * kron_super(sp, sm) - kron_super(mp, one) - kron_super(one, mp);
  const Superoperator down = 2.0 * kron_super(sm, sp) - kron_super(pm, one) - kron_super(one, pm);
  return coherent - (p.gamma / 2.0 * n) * up - (p.gamma / 2.0 * (n + 1.0)) * down;
}

Superoperator amplitude_damping_dissipator(double gamma, double b) {
  if (b == 0.0) throw std::invalid_argument("amplitude_damping_dissipator: b must be nonzero");
  return (-gamma * b) * ((1.0 / (2.0 * b)) * p12() + d1() + d2());
}

Superoperator amplitude_damping_generator(double omega0, double gamma, double b) {
  return omega0 * r3() + amplitude_damping_dissipator(gamma, b);
}

Superoperator amplitude_damping(const DampingParams& p) {
  p.validate();
  const Superoperator lindblad = amplitude_damping_lindblad(p);
  const Superoperator assembled = amplitude_damping_generator(p.omega0, p.gamma, p.b);
  const double diff = max_abs(lindblad - assembled);
  if (diff > kAssemblyTol) {
    throw Error("amplitude_damping: Lindblad and generator forms differ by " + fmt(diff));
  }
  return assembled;
}

Superoperator phase_damping(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("phase_damping: gamma must be > 0");
  const auto& s = pauli_matrices();
  const Superoperator direct = (-gamma / 2.0) * (kron_super(s[2], s[2]) - Superoperator::identity(2));
  const Superoperator k = -gamma * d3();
  if (max_abs(direct - k) > kAssemblyTol) throw Error("phase_damping: assembly mismatch");
  return k;
}

InteractionPicture interaction_picture(const Superoperator& k, const DampingParams& p,
                                       const std::vector<double>& sample_times) {
  const Superoperator expected = amplitude_damping(p);
  if (k.n() != 2 || max_abs(k - expected) > kSymmetryTol) {
    throw std::invalid_argument("interaction_picture: K is not K_amp for the given parameters");
  }
  InteractionPicture out{amplitude_damping_dissipator(p.gamma, p.b), 0.0};
  for (const double t : sample_times) {
    const Superoperator forward = expm(r3(), p.omega0 * t);
    const Superoperator backward = expm(r3(), -p.omega0 * t);
    const double res = max_abs(forward * out.generator * backward - out.generator);
    out.max_conjugation_residual = std::max(out.max_conjugation_residual, res);
  }
  if (out.max_conjugation_residual > kSymmetryTol) {
    throw Error("interaction_picture: K_d changes under conjugation by " +
                fmt(out.max_conjugation_residual));
  }
  return out;
}

Superoperator interaction_propagator(const DampingParams& p, double t) {
  const double rate = p.gamma * p.b;
  const double fast = 0.5 * (1.0 - std::exp(-2.0 * rate * t));
  const double slow = 1.0 - std::exp(-rate * t);
  return Superoperator::identity(2) + fast * ((1.0 / (2.0 * p.b)) * p12() + d1() + d2()) +
         (0.5 * slow * slow) * d3();
}

EvolutionPoint evolve_closed_form(const DampingParams& p, const BlochVector& r0, double t) {
  p.validate();
  const double rate = p.gamma * p.b;
  const double e1 = std::exp(-rate * t);
  const double e2 = std::exp(-2.0 * rate * t);
  EvolutionPoint out;
  out.negative_time = t < 0.0;
  out.interaction = {r0.x * e1, r0.y * e1, r0.z * e2 - (1.0 - e2) / (2.0 * p.b)};
  out.schrodinger = bloch_action(GeneratorId::rotation(3), p.omega0 * t, out.interaction);

  const BlochVector via_super = rho_to_bloch(dmsym::apply(interaction_propagator(p, t), bloch_to_rho(r0)));
  const double diff = max_abs_difference(via_super, out.interaction);
  if (diff > 1e-12) {
    throw Error("evolve_closed_form: Bloch and superoperator forms differ by " + fmt(diff));
  }
  return out;
}

BlochVector evolve_phase_damping(double gamma, const BlochVector& r0, double t) {
  const double e = std::exp(-gamma * t);
  return {r0.x * e, r0.y * e, r0.z};
}

ComplexMatrix evolve_oracle(const Superoperator& k, const ComplexMatrix& rho0, double t) {
  return dmsym::apply(expm(k, -t), rho0);
}

std::string to_string(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::Exact: return "Exact";
    case SymmetryKind::FormInvariant: return "FormInvariant";
    case SymmetryKind::NotASymmetry: return "NotASymmetry";
  }
  return "?";
}

SymmetryVerdict classify_symmetry(const Superoperator& k, const Superoperator& s,
                                  const DampingParams& tmpl) {
  if (k.n() != s.n()) throw DimensionError("classify_symmetry: dimension mismatch");
  const Superoperator transformed = s * k * inverse(s);
  SymmetryVerdict verdict;
  verdict.residual = max_abs(transformed - k);
  if (verdict.residual <= kSymmetryTol) {
    verdict.kind = SymmetryKind::Exact;
    return verdict;
  }
  if (k.n() != 2) {
    verdict.diagnostic = "form-invariant fit is defined for the two-level amplitude-damping family only";
    return verdict;
  }

  CoefficientVector c(2, CoefficientConvention::Dilation);
  try {
    c = extract_coefficients(transformed, CoefficientConvention::Dilation);
  } catch (const CoefficientError& e) {
    verdict.diagnostic = std::string("transformed generator left the generator span: ") + e.what();
    return verdict;
  }
  const double gamma_new = -2.0 * c.beta(1, 2);
  const double rate = -0.5 * (c.alpha(1, 1) + c.alpha(2, 2));
  if (!(gamma_new > 0.0)) {
    verdict.diagnostic = "fitted gamma' = " + fmt(gamma_new) +
                         " is not positive (translation beyond 1/(4b) diverges b')";
    return verdict;
  }
  const double b_new = rate / gamma_new;
  const Superoperator fitted = amplitude_damping_generator(tmpl.omega0, gamma_new, b_new);
  const double fit_residual = max_abs(transformed - fitted);
  if (fit_residual > kSymmetryTol) {
    verdict.residual = fit_residual;
    verdict.diagnostic = "K' is not of amplitude-damping form (fit residual " + fmt(fit_residual) + ")";
    return verdict;
  }
  if (b_new < 0.5) {
    verdict.residual = fit_residual;
    verdict.diagnostic = "fitted b' = " + fmt(b_new) + ", gamma' = " + fmt(gamma_new) +
                         ": b' < 1/2 has no Bose-Einstein temperature";
    return verdict;
  }
  verdict.kind = SymmetryKind::FormInvariant;
  verdict.params = DampingParams{tmpl.omega0, gamma_new, b_new};
  verdict.residual = fit_residual;
  return verdict;
}

StationaryState stationary_state(const CoefficientVector& input) {
  if (input.n() != 2) throw std::invalid_argument("stationary_state: two-level generators only");
  const CoefficientVector c = input.to_convention(CoefficientConvention::Dilation);

  double scale = 1.0;
  for (const double v : c.values()) scale = std::max(scale, std::abs(v));
  const double zero_tol = 1e-12 * scale;
  if (std::abs(c.omega(1)) > zero_tol || std::abs(c.omega(2)) > zero_tol) {
    throw std::invalid_argument("stationary_state: unitary part must be diagonal (omega1 = omega2 = 0)");
  }

  struct Ratio {
    double num;
    double den;
    const char* label;
  };
  const Ratio ratios[] = {
      {-2.0 * c.beta(1, 2), c.alpha(1, 1) + c.alpha(2, 2), "-2 beta12 / (alpha11 + alpha22)"},
      {-2.0 * c.beta(1, 3), c.alpha(2, 3), "-2 beta13 / alpha23"},
      {2.0 * c.beta(2, 3), c.alpha(1, 3), "2 beta23 / alpha13"},
  };

  std::optional<double> z;
  for (const auto& r : ratios) {
    if (std::abs(r.den) <= zero_tol) {
      if (std::abs(r.num) > zero_tol) {
        throw StationaryStateError(std::string("stationary_state: ") + r.label +
                                   " has a nonzero numerator over a vanishing denominator; "
                                   "no zero-coherence stationary state");
      }
      continue;
    }
    const double value = r.num / r.den;
    if (z && std::abs(*z - value) > 1e-10) {
      throw StationaryStateError("stationary_state: ratios disagree (" + fmt(*z) + " vs " +
                                 fmt(value) + " from " + r.label + ")");
    }
    if (!z) z = value;
  }

  const Superoperator k = assemble_generator(c);
  Eigen::FullPivLU<ComplexMatrix> lu(k.mat());
  lu.setThreshold(1e-10);
  const ComplexMatrix kernel = lu.kernel();

  StationaryState out;
  out.nullity = lu.dimensionOfKernel();
  if (out.nullity == 1) {
    const ComplexMatrix rho = unvectorize(kernel.col(0), 2);
    const Complex tr = rho.trace();
    if (std::abs(tr) > 1e-12) out.oracle_point = rho_to_bloch(rho / tr);
  }

  auto annihilates = [&k](const ComplexMatrix& rho) { return max_abs(dmsym::apply(k, rho)); };
  const double tol = 1e-10 * scale;
  if (z) {
    out.kind = StationaryKind::Point;
    out.point = {0.0, 0.0, *z};
    out.oracle_residual = annihilates(bloch_to_rho(out.point));
  } else {
    out.kind = StationaryKind::ZAxisManifold;
    out.oracle_residual = std::max(annihilates(bloch_to_rho({0.0, 0.0, 1.0})),
                                   annihilates(bloch_to_rho({0.0, 0.0, -1.0})));
  }
  if (out.oracle_residual > tol) {
    throw StationaryStateError("stationary_state: null-space check failed, |K rho_st| = " +
                               fmt(out.oracle_residual));
  }
  return out;
}

}  // namespace dmsym
