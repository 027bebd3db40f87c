#include "dmsym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dmsym/basis.hpp"
#include "dmsym/dynamics.hpp"
#include "dmsym/maps.hpp"

namespace dmsym {

namespace {

const std::vector<double> kGrid = {-2.0, -1.0, -0.3, 0.0, 0.3, 1.0, 2.0};

std::vector<GeneratorId> qubit_transforms() {
  std::vector<GeneratorId> ids;
  for (int i = 1; i <= 3; ++i) ids.push_back(GeneratorId::rotation(i));
  for (int i = 1; i <= 3; ++i) ids.push_back(GeneratorId::dilation(i));
  for (const auto& [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
    ids.push_back(GeneratorId::hsym(i, j));
    ids.push_back(GeneratorId::panti(i, j));
  }
  return ids;
}

class Runner {
 public:
  explicit Runner(const VerifyOptions& opt) : opt_(opt), rng_(opt.seed) { report_.level = opt.level; }

  bool full() const { return opt_.level == VerifyLevel::Full; }

  void record(const std::string& suite, const std::string& check, double residual, double tol) {
    const bool pass = std::isfinite(residual) && residual <= tol;
    report_.checks.push_back({suite, check, residual, tol, pass});
  }
  void count(const std::string& suite, const std::string& check, long mismatches) {
    record(suite, check, static_cast<double>(mismatches), 0.0);
  }

  Superoperator hooked(const GeneratorId& id, Superoperator g) const {
    return opt_.corrupt ? opt_.corrupt(id, std::move(g)) : g;
  }
  Superoperator gen(const GeneratorId& id) const { return hooked(id, generator(id)); }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  BlochVector random_state() {
    BlochVector r;
    do {
      r = {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    } while (r.norm_squared() > 1.0);
    return r;
  }

  VerifyReport take() { return std::move(report_); }

 private:
  const VerifyOptions& opt_;
  std::mt19937_64 rng_;
  VerifyReport report_;
};

std::string tag(int n) { return "N=" + std::to_string(n); }

void tensor_suite(Runner& run) {
  const std::vector<int> dims = run.full() ? std::vector<int>{2, 3, 4} : std::vector<int>{2};
  for (const int n : dims) {
    const TensorIdentityReport rep = verify_tensor_identities(n);
    const std::string t = tag(n) + " ";
    run.record("tensor_identities", t + "cyclic d f", rep.cyclic_df, 1e-12);
    run.record("tensor_identities", t + "cyclic f f", rep.cyclic_ff, 1e-12);
    run.record("tensor_identities", t + "f f = d d", rep.ff_dd, 1e-12);
    run.record("tensor_identities", t + "product law", rep.product_law, 1e-13);
    run.record("tensor_identities", t + "commutator law", rep.commutator_law, 1e-13);
    run.record("tensor_identities", t + "index symmetry", rep.symmetry, 1e-13);
    run.record("tensor_identities", t + "real tensors", rep.imaginary, 1e-13);
  }
}

void commutation_suite(Runner& run) {
  const std::vector<int> dims = run.full() ? std::vector<int>{2, 3} : std::vector<int>{2};
  for (const int n : dims) {
    const CommutationReport rep = verify_commutation_tables(n);
    const std::string t = tag(n) + " ";
    run.record("commutation_tables", t + "[iR, iR]", rep.rr, 1e-10);
    run.record("commutation_tables", t + "[iR, H]", rep.rh, 1e-10);
    run.record("commutation_tables", t + "[iR, P]", rep.rp, 1e-10);
    run.record("commutation_tables", t + "[H, H]", rep.hh, 1e-10);
    run.record("commutation_tables", t + "[H, P]", rep.hp, 1e-10);
    run.record("commutation_tables", t + "[P, P]", rep.pp, 1e-10);
  }
}

void conditions_suite(Runner& run) {
  const std::vector<int> dims = run.full() ? std::vector<int>{2, 3, 4} : std::vector<int>{2};
  for (const int n : dims) {
    const GeneratorAlgebra alg(n);
    std::vector<FamilyMember> family = generator_family(alg);
    double herm = 0.0;
    double trace = 0.0;
    long unitary_mismatch = 0;
    for (auto& member : family) {
      member.op = run.hooked(member.id, member.op);
      const ConditionFlags flags = check_conditions(member.op);
      herm = std::max(herm, flags.hermitian_residual);
      trace = std::max(trace, flags.trace_residual);
      // Beyond iR_i, P_ij with [l_i, l_j] = 0 reduces to 2i A_ij, which is
      // anti-hermitian and antisymmetric as well (only possible for N > 2).
      bool expect = member.id.kind == GeneratorKind::Rotation;
      if (member.id.kind == GeneratorKind::PAnti) {
        const ComplexMatrix& li = alg.basis()[member.id.i - 1];
        const ComplexMatrix& lj = alg.basis()[member.id.j - 1];
        expect = max_abs(ComplexMatrix(li * lj - lj * li)) < 1e-14;
      }
      if (flags.unitary != expect) ++unitary_mismatch;
    }
    const long expected = static_cast<long>(n) * n * n * n - static_cast<long>(n) * n;
    const std::string t = tag(n) + " ";
    run.count("generator_conditions", t + "family size", std::labs(static_cast<long>(family.size()) - expected));
    run.record("generator_conditions", t + "hermitian", herm, kConditionTol);
    run.record("generator_conditions", t + "trace", trace, kConditionTol);
    run.count("generator_conditions", t + "unitary iff iR or commuting P", unitary_mismatch);

    double bridge = 0.0;
    if (n == 2) {
      for (int i = 1; i <= 3; ++i) {
        bridge = std::max(bridge, max_abs(alg.hsym(i, i) - 2.0 * sigma_generator(GeneratorId::dilation(i))));
        bridge = std::max(bridge, max_abs(alg.rotation(i) - sigma_generator(GeneratorId::rotation(i))));
        for (int j = i + 1; j <= 3; ++j) {
          bridge = std::max(bridge, max_abs(alg.hsym(i, j) - sigma_generator(GeneratorId::hsym(i, j))));
          bridge = std::max(bridge, max_abs(alg.panti(i, j) - sigma_generator(GeneratorId::panti(i, j))));
        }
      }
      run.record("generator_conditions", t + "lambda/sigma bridge", bridge, 1e-15);
    }

    double factor = 0.0;
    for (int i = 1; i <= alg.size(); ++i) {
      const ComplexMatrix& l = alg.basis()[i - 1];
      for (const double theta : {-1.3, 0.7}) {
        const Superoperator lhs = expm(run.hooked(GeneratorId::rotation(i, n), alg.rotation(i)), -theta);
        const ComplexMatrix u = expm(ComplexMatrix(-kI * theta * l));
        const ComplexMatrix v = expm(ComplexMatrix(kI * theta * l));
        factor = std::max(factor, max_abs(lhs - kron_super(u, v)));
      }
    }
    run.record("generator_conditions", t + "rotation factorization", factor, 1e-12);
  }
}

void closure_suite(Runner& run) {
  const std::vector<int> dims = run.full() ? std::vector<int>{2, 3} : std::vector<int>{2};
  for (const int n : dims) {
    const GeneratorAlgebra alg(n);
    const std::vector<FamilyMember> family = generator_family(alg);
    long failures = 0;
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = a + 1; b < family.size(); ++b) {
        try {
          commutator_decompose(run.hooked(family[a].id, family[a].op), run.hooked(family[b].id, family[b].op),
                               alg);
        } catch (const Error&) {
          ++failures;
        }
      }
    run.count("closure", tag(n) + " commutators decompose", failures);
  }
}

void closed_form_suite(Runner& run) {
  double expm_res = 0.0;
  double bloch_res = 0.0;
  double preservation = 0.0;
  std::vector<BlochVector> states;
  for (int k = 0; k < 4; ++k) states.push_back(run.random_state());
  for (const GeneratorId& id : qubit_transforms()) {
    const Superoperator g = run.gen(id);
    for (const double p : kGrid) {
      const Superoperator closed = closed_form_transform(id, p);
      const Superoperator oracle = expm(g, -p);
      expm_res = std::max(expm_res, max_abs(closed - oracle));
      for (const BlochVector& r : states) {
        const BlochVector via = rho_to_bloch(dmsym::apply(closed, bloch_to_rho(r)));
        bloch_res = std::max(bloch_res, max_abs_difference(via, bloch_action(id, p, r)));
        const ComplexMatrix out = dmsym::apply(oracle, bloch_to_rho(r));
        preservation = std::max({preservation, max_abs(ComplexMatrix(out - out.adjoint())),
                                 std::abs(out.trace() - 1.0)});
      }
    }
  }
  run.record("closed_forms", "closed form vs expm", expm_res, 1e-10);
  run.record("closed_forms", "Bloch action vs superoperator", bloch_res, 1e-12);
  run.record("closed_forms", "hermiticity and trace preserved", preservation, 1e-12);
}

void cp_suite(Runner& run) {
  long wrong = 0;
  auto expect = [&](const GeneratorId& id, double p, CpVerdict want) {
    const Superoperator s = expm(run.gen(id), -p);
    if (choi_cp(s).verdict != want) ++wrong;
    const CpVerdict fa = fujiwara_algoet_cp(affine_of(s));
    if (fa != CpVerdict::NotApplicable && fa != want) ++wrong;
  };
  for (const double theta : kGrid) expect(GeneratorId::rotation(3), theta, CpVerdict::CP);
  for (const double mu : {-1.0, -0.1, 0.0, 0.1, 1.0}) {
    expect(GeneratorId::dilation(3), mu, mu <= 0.0 ? CpVerdict::CP : CpVerdict::NotCP);
  }
  for (const double p : kGrid) {
    if (p == 0.0) continue;
    expect(GeneratorId::hsym(1, 2), p, CpVerdict::NotCP);
    expect(GeneratorId::panti(1, 2), p, CpVerdict::NotCP);
  }
  run.count("cp", "named transforms classified", wrong);

  const std::vector<GeneratorId> unital = [] {
    std::vector<GeneratorId> ids;
    for (const GeneratorId& id : qubit_transforms())
      if (id.kind != GeneratorKind::PAnti) ids.push_back(id);
    return ids;
  }();
  const int draws = run.full() ? 1000 : 200;
  long disagree = 0;
  for (int k = 0; k < draws; ++k) {
    Superoperator s = Superoperator::identity(2);
    const int factors = 1 + k % 3;
    for (int f = 0; f < factors; ++f) {
      const auto pick = static_cast<std::size_t>(run.uniform(0.0, static_cast<double>(unital.size())));
      const GeneratorId& id = unital[std::min(pick, unital.size() - 1)];
      s = expm(run.gen(id), -run.uniform(-2.0, 2.0)) * s;
    }
    const CpVerdict fa = fujiwara_algoet_cp(affine_of(s));
    if (fa == CpVerdict::NotApplicable) continue;
    if (fa != choi_cp(s).verdict) ++disagree;
  }
  run.count("cp", "Fujiwara-Algoet vs Choi on random unital maps", disagree);
}

void symmetry_suite(Runner& run) {
  const DampingParams p{1.0, 0.1, 0.5};
  const Superoperator k = amplitude_damping(p);
  const Superoperator kd = amplitude_damping_dissipator(p.gamma, p.b);
  const Superoperator r3 = run.gen(GeneratorId::rotation(3));
  const Superoperator d3 = run.gen(GeneratorId::dilation(3));
  const Superoperator h12 = run.gen(GeneratorId::hsym(1, 2));
  const Superoperator p12 = run.gen(GeneratorId::panti(1, 2));
  run.record("symmetry", "[iR3, K_amp] = 0", max_abs(commutator(r3, k)), 1e-12);
  run.record("symmetry", "[D3, K_amp] = 0", max_abs(commutator(d3, k)), 1e-12);
  run.record("symmetry", "[H12, K_d] = 0", max_abs(commutator(h12, kd)), 1e-12);
  run.record("symmetry", "[P12, K_amp] = -2 gamma b P12",
             max_abs(commutator(p12, k) + (2.0 * p.gamma * p.b) * p12), 1e-12);

  double form = 0.0;
  double product = 0.0;
  long verdicts = 0;
  for (const double zeta : {-0.5, 0.1, 0.25}) {
    const double scale = 1.0 - 4.0 * p.b * zeta;
    const double b2 = p.b / scale;
    const double g2 = scale * p.gamma;
    const Superoperator s = expm(p12, -zeta);
    const Superoperator moved = s * k * expm(p12, zeta);
    form = std::max(form, max_abs(moved - amplitude_damping_generator(p.omega0, g2, b2)));
    const SymmetryVerdict v = classify_symmetry(k, s, p);
    const bool physical = b2 >= 0.5;
    if (physical) {
      if (v.kind != SymmetryKind::FormInvariant || !v.params) {
        ++verdicts;
        continue;
      }
      product = std::max(product, std::abs(v.params->gamma * v.params->b - p.gamma * p.b));
      form = std::max({form, std::abs(v.params->b - b2), std::abs(v.params->gamma - g2)});
    } else if (v.kind != SymmetryKind::NotASymmetry) {
      ++verdicts;
    }
  }
  run.record("symmetry", "translation maps K_amp into the family", form, 1e-12);
  run.record("symmetry", "gamma' b' = gamma b", product, 1e-14);
  run.count("symmetry", "form-invariant verdicts", verdicts);

  const Superoperator kph = phase_damping(p.gamma);
  long exact = 0;
  for (const GeneratorId& id : {GeneratorId::rotation(3), GeneratorId::dilation(3), GeneratorId::hsym(1, 2),
                                GeneratorId::panti(1, 2)}) {
    for (const double q : {-0.4, 0.3}) {
      if (classify_symmetry(kph, expm(run.gen(id), -q), p).kind != SymmetryKind::Exact) ++exact;
    }
  }
  run.count("symmetry", "named transforms are exact symmetries of K_ph", exact);
}

void algebra_suite(Runner& run) {
  double res = 0.0;
  const Superoperator d1 = run.gen(GeneratorId::dilation(1));
  const Superoperator d2 = run.gen(GeneratorId::dilation(2));
  const Superoperator d3 = run.gen(GeneratorId::dilation(3));
  const Superoperator p12 = run.gen(GeneratorId::panti(1, 2));
  for (const auto& [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
    const Superoperator p = run.gen(GeneratorId::panti(i, j));
    const Superoperator h = run.gen(GeneratorId::hsym(i, j));
    const Superoperator dk = run.gen(GeneratorId::dilation(6 - i - j));
    res = std::max({res, max_abs(p * p), max_abs(h * h + dk)});
  }
  run.record("algebra", "P^2 = 0, H_ij^2 = -D_k", res, 1e-13);

  res = 0.0;
  for (int i = 1; i <= 3; ++i) {
    const Superoperator minus_d = -run.gen(GeneratorId::dilation(i));
    Superoperator power = minus_d;
    for (int k = 2; k <= 4; ++k) {
      power = power * minus_d;
      res = std::max(res, max_abs(power - minus_d));
    }
  }
  run.record("algebra", "(-D_i)^n = -D_i", res, 1e-13);

  res = std::max({max_abs(d1 * p12 + p12), max_abs(d2 * p12 + p12), max_abs(p12 * d1), max_abs(p12 * d2),
                  max_abs(d1 * d2 - 0.5 * (d3 - d1 - d2)), max_abs(d2 * d1 - 0.5 * (d3 - d1 - d2))});
  run.record("algebra", "D/P product relations", res, 1e-13);

  const DampingParams p{1.0, 0.1, 0.5};
  res = 0.0;
  double split = 0.0;
  double coeff_sign = 0.0;
  for (const double b : {0.5, 1.7}) {
    const Superoperator x1 = (1.0 / (4.0 * b)) * p12 + d1;
    const Superoperator x2 = (1.0 / (4.0 * b)) * p12 + d2;
    res = std::max({res, max_abs(x1 * x1 + x1), max_abs(x2 * x2 + x2)});
    const Superoperator kd = amplitude_damping_dissipator(p.gamma, b);
    for (const double t : {0.3, 4.0, 25.0}) {
      const double gbt = p.gamma * b * t;
      split = std::max(split, max_abs(expm(kd, -t) - expm(x2, gbt) * expm(x1, gbt)));
      const DampingParams q{p.omega0, p.gamma, b};
      split = std::max(split, max_abs(expm(kd, -t) - interaction_propagator(q, t)));
      const double fast = 0.5 * (1.0 - std::exp(-2.0 * gbt));
      const double slow = 0.5 * std::pow(1.0 - std::exp(-gbt), 2);
      coeff_sign = std::max({coeff_sign, -fast, -slow});
    }
  }
  run.record("algebra", "(P12/4b + D_i)^2 = -(P12/4b + D_i)", res, 1e-13);
  run.record("algebra", "dissipator splitting and propagator", split, 1e-11);
  run.record("algebra", "propagator coefficients nonnegative", std::max(0.0, coeff_sign), 0.0);
}

void trajectory_suite(Runner& run) {
  const DampingParams p{1.0, 0.1, 0.5};
  const BlochVector r0{0.4, 0.5, 0.5};
  const Superoperator k = amplitude_damping(p);
  double res = 0.0;
  double ball = 0.0;
  for (int step = 0; step <= 200; ++step) {
    const double t = 0.5 * step;
    const EvolutionPoint pt = evolve_closed_form(p, r0, t);
    const BlochVector oracle = rho_to_bloch(evolve_oracle(k, bloch_to_rho(r0), t));
    res = std::max(res, max_abs_difference(pt.schrodinger, oracle));
    ball = std::max(ball, pt.schrodinger.norm_squared() - 1.0);
  }
  run.record("trajectory", "closed form vs expm oracle on [0, 100]", res, 1e-9);
  run.record("trajectory", "stays in the Bloch ball", std::max(0.0, ball), 1e-9);
  // Coherences decay as e^{-gamma b t}, populations as e^{-2 gamma b t}.
  double rate = 0.0;
  const double perp0 = std::hypot(r0.x, r0.y);
  for (const double t : {20.0, 140.0, 300.0}) {
    const BlochVector r = evolve_closed_form(p, r0, t).schrodinger;
    const double gbt = p.gamma * p.b * t;
    rate = std::max({rate, std::abs(std::hypot(r.x, r.y) - perp0 * std::exp(-gbt)),
                     std::abs(r.z + 1.0 - (r0.z + 1.0) * std::exp(-2.0 * gbt))});
  }
  run.record("trajectory", "decay rates toward (0, 0, -1)", rate, 1e-14);
  const BlochVector late = evolve_closed_form(p, r0, 300.0).schrodinger;
  run.record("trajectory", "within 1e-6 of (0, 0, -1) at t = 300", max_abs_difference(late, {0.0, 0.0, -1.0}),
             1e-6);
}

void round_trip_suite(Runner& run) {
  const int draws = run.full() ? 100 : 20;
  const std::vector<int> dims = run.full() ? std::vector<int>{2, 3} : std::vector<int>{2};
  for (const int n : dims) {
    const GeneratorAlgebra alg(n);
    double worst = 0.0;
    for (int k = 0; k < draws; ++k) {
      CoefficientVector c(n, default_convention(n));
      double big = 0.0;
      for (double& v : c.values()) {
        v = run.uniform(-1.0, 1.0);
        big = std::max(big, std::abs(v));
      }
      const CoefficientVector back = extract_coefficients(assemble_generator(c, alg), alg, c.convention());
      worst = std::max(worst, back.max_abs_difference(c) / big);
    }
    run.record("round_trip", tag(n) + " extract(assemble(c)) = c", worst, 1e-10);
  }
  const DampingParams p{1.0, 0.1, 0.5};
  const CoefficientVector c = extract_coefficients(amplitude_damping(p), CoefficientConvention::Dilation);
  CoefficientVector want(2, CoefficientConvention::Dilation);
  want.omega(3) = p.omega0;
  want.alpha(1, 1) = -p.gamma * p.b;
  want.alpha(2, 2) = -p.gamma * p.b;
  want.beta(1, 2) = -p.gamma / 2.0;
  run.record("round_trip", "K_amp coefficients", c.max_abs_difference(want), 1e-12);
}

void stationary_suite(Runner& run) {
  double res = 0.0;
  for (const double b : {0.5, 1.0, 2.5}) {
    const DampingParams p{1.0, 0.1, b};
    CoefficientVector c = extract_coefficients(amplitude_damping(p), CoefficientConvention::Dilation);
    const StationaryState st = stationary_state(c);
    const double z = -1.0 / (2.0 * b);
    res = std::max(res, std::abs(st.point.z - z));
    if (st.kind != StationaryKind::Point || !st.oracle_point) {
      res = 1.0;
      continue;
    }
    res = std::max(res, max_abs_difference(*st.oracle_point, st.point));
    c.omega(3) += 0.7;
    c.alpha(1, 2) += 0.3;
    c.alpha(3, 3) -= 0.2;
    res = std::max(res, std::abs(stationary_state(c).point.z - z));
  }
  run.record("stationary", "amplitude damping z_st = -1/(2b)", res, 1e-12);

  const CoefficientVector ph = extract_coefficients(phase_damping(0.1), CoefficientConvention::Dilation);
  run.count("stationary", "phase damping has a z-axis manifold",
            stationary_state(ph).kind == StationaryKind::ZAxisManifold ? 0 : 1);

  CoefficientVector bad(2, CoefficientConvention::Dilation);
  bad.alpha(1, 1) = bad.alpha(2, 2) = -0.05;
  bad.beta(1, 2) = -0.05;
  bad.alpha(2, 3) = 0.1;
  bad.beta(1, 3) = 0.3;
  long accepted = 0;
  try {
    stationary_state(bad);
    ++accepted;
  } catch (const StationaryStateError&) {
  }
  run.count("stationary", "inconsistent coefficients rejected", accepted);
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> VerifyReport::failed_suites() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass && std::find(out.begin(), out.end(), c.suite) == out.end()) out.push_back(c.suite);
  return out;
}

std::string to_string(VerifyLevel level) { return level == VerifyLevel::Full ? "full" : "fast"; }

VerifyReport run_verification(const VerifyOptions& options) {
  Runner run(options);
  // A suite that throws is recorded as one failed check and the rest still run.
  const std::pair<const char*, void (*)(Runner&)> suites[] = {
      {"tensor_identities", tensor_suite}, {"commutation_tables", commutation_suite},
      {"generator_conditions", conditions_suite}, {"closure", closure_suite},
      {"closed_forms", closed_form_suite}, {"cp", cp_suite},
      {"symmetry", symmetry_suite}, {"algebra", algebra_suite},
      {"trajectory", trajectory_suite}, {"round_trip", round_trip_suite},
      {"stationary", stationary_suite}};
  for (const auto& [name, suite] : suites) {
    try {
      suite(run);
    } catch (const std::exception& e) {
      run.record(name, std::string("raised: ") + e.what(), std::numeric_limits<double>::infinity(), 0.0);
    }
  }
  return run.take();
}

}  // namespace dmsym
