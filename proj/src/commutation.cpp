// Right-hand sides of the closed commutation relations between iR_i, H_ij
// and P_ij, written as explicit index sums. Underlined index pairs are
// symmetrized by summing both orders, hatted pairs antisymmetrized by taking
// the difference; each marked pair is expanded separately. All indices are
// 0-based in this file.

#include <algorithm>
#include <array>
#include <cmath>

#include "dmsym/generators.hpp"

namespace dmsym {

namespace {

constexpr double kSkip = 1e-15;

struct Ordering {
  int first;
  int second;
  double sign;
};

// Both orderings of a pair, with sign (+1, +1) for symmetrization or
// (+1, -1) for antisymmetrization.
std::array<Ordering, 2> sym(int a, int b) { return {{{a, b, 1.0}, {b, a, 1.0}}}; }
std::array<Ordering, 2> anti(int a, int b) { return {{{a, b, 1.0}, {b, a, -1.0}}}; }

class Tables {
 public:
  explicit Tables(const GeneratorAlgebra& alg) : alg_(alg), m_(alg.size()), t_(alg.tensors()) {
    const auto mm = static_cast<std::size_t>(m_) * m_;
    h_.reserve(mm);
    p_.reserve(mm);
    for (int a = 0; a < m_; ++a)
      for (int b = 0; b < m_; ++b) {
        h_.push_back(alg.hsym(a + 1, b + 1));
        p_.push_back(alg.panti(a + 1, b + 1));
      }
  }

  int m() const { return m_; }
  const Superoperator& r(int a) const { return alg_.rotation(a + 1); }
  const Superoperator& h(int a, int b) const { return h_[static_cast<std::size_t>(a) * m_ + b]; }
  const Superoperator& p(int a, int b) const { return p_[static_cast<std::size_t>(a) * m_ + b]; }
  double f(int a, int b, int c) const { return t_.f(a, b, c); }
  double d(int a, int b, int c) const { return t_.d(a, b, c); }
  int n() const { return alg_.n(); }

  static void add(ComplexMatrix& acc, double coeff, const Superoperator& g) {
    if (std::abs(coeff) > kSkip) acc += coeff * g.mat();
  }

  // [iR_i, iR_j] = -f_ijk iR_k
  ComplexMatrix rr(int i, int j) const {
    ComplexMatrix out = zero();
    for (int k = 0; k < m_; ++k) add(out, -f(i, j, k), r(k));
    return out;
  }

  // [iR_i, H_mn] = f_ir(m H_n)r
  ComplexMatrix rh(int i, int mi, int ni) const {
    ComplexMatrix out = zero();
    for (const auto& [a, b, s] : sym(mi, ni))
      for (int q = 0; q < m_; ++q) add(out, s * f(i, q, a), h(b, q));
    return out;
  }

  // [iR_i, P_mn] = -f_ir[m P_n]r
  ComplexMatrix rp(int i, int mi, int ni) const {
    ComplexMatrix out = zero();
    for (const auto& [a, b, s] : anti(mi, ni))
      for (int q = 0; q < m_; ++q) add(out, -s * f(i, q, a), p(b, q));
    return out;
  }

  ComplexMatrix hh(int i, int j, int mi, int ni) const {
    ComplexMatrix out = zero();
    for (int q = 0; q < m_; ++q) {
      double c = 0.0;
      for (const auto& [a, b, s1] : sym(i, j))
        for (const auto& [e, g, s2] : sym(mi, ni))
          if (a == e) c += -(2.0 / n()) * s1 * s2 * f(g, b, q);
      for (int k = 0; k < m_; ++k)
        for (int s = 0; s < m_; ++s) c += d(i, j, k) * d(mi, ni, s) * f(k, s, q);
      add(out, c, r(q));
    }
    for (int q = 0; q < m_; ++q) {
      for (const auto& [a, b, s1] : sym(i, j)) {
        double c = 0.0;
        for (int s = 0; s < m_; ++s) c += d(mi, ni, s) * f(s, q, a);
        add(out, s1 * c, p(b, q));
      }
      for (const auto& [a, b, s1] : sym(mi, ni)) {
        double c = 0.0;
        for (int s = 0; s < m_; ++s) c += d(i, j, s) * f(s, q, a);
        add(out, -s1 * c, p(b, q));
      }
    }
    for (int q = 0; q < m_; ++q)
      for (int s = 0; s < m_; ++s) {
        double c = 0.0;
        for (const auto& [a, b, s1] : sym(i, j))
          for (const auto& [e, g, s2] : sym(mi, ni)) c += s1 * s2 * d(q, a, e) * f(g, b, s);
        add(out, c, p(q, s));
      }
    return out;
  }

  ComplexMatrix hp(int i, int j, int mi, int ni) const {
    ComplexMatrix out = zero();
    for (int s = 0; s < m_; ++s) {
      double c = 0.0;
      for (int t = 0; t < m_; ++t)
        for (int q = 0; q < m_; ++q) c += d(i, j, t) * f(mi, ni, q) * f(q, s, t);
      add(out, c, r(s));
    }
    for (int q = 0; q < m_; ++q)
      for (int s = 0; s < m_; ++s) {
        double c = 0.0;
        for (const auto& [e, g, s2] : anti(mi, ni))
          for (const auto& [a, b, s1] : sym(i, j)) c += s1 * s2 * d(s, e, a) * f(b, g, q);
        add(out, c, h(q, s));
      }
    for (int q = 0; q < m_; ++q) {
      for (const auto& [e, g, s2] : anti(mi, ni)) {
        double c = 0.0;
        for (int s = 0; s < m_; ++s) c += d(i, j, s) * f(s, q, e);
        add(out, -s2 * c, h(g, q));
      }
    }
    for (int s = 0; s < m_; ++s) {
      for (const auto& [a, b, s1] : sym(i, j)) {
        double c = 0.0;
        for (int q = 0; q < m_; ++q) c += f(mi, ni, q) * f(q, s, a);
        add(out, s1 * c, p(b, s));
      }
    }
    return out;
  }

  ComplexMatrix pp(int i, int j, int mi, int ni) const {
    ComplexMatrix out = zero();
    for (int q = 0; q < m_; ++q) {
      double c = 0.0;
      for (const auto& [a, b, s1] : anti(i, j))
        for (const auto& [e, g, s2] : anti(mi, ni))
          if (a == e) c += (2.0 / n()) * s1 * s2 * f(g, b, q);
      for (int k = 0; k < m_; ++k)
        for (int s = 0; s < m_; ++s) c += f(i, j, k) * f(mi, ni, s) * f(k, s, q);
      add(out, c, r(q));
    }
    for (int q = 0; q < m_; ++q) {
      for (const auto& [a, b, s1] : anti(i, j)) {
        double c = 0.0;
        for (int s = 0; s < m_; ++s) c += f(mi, ni, s) * f(s, q, a);
        add(out, s1 * c, h(b, q));
      }
      for (const auto& [a, b, s1] : anti(mi, ni)) {
        double c = 0.0;
        for (int s = 0; s < m_; ++s) c += f(i, j, s) * f(s, q, a);
        add(out, -s1 * c, h(b, q));
      }
    }
    for (int q = 0; q < m_; ++q)
      for (int s = 0; s < m_; ++s) {
        double c = 0.0;
        for (const auto& [a, b, s1] : anti(i, j))
          for (const auto& [e, g, s2] : anti(mi, ni)) c += s1 * s2 * d(q, a, e) * f(g, b, s);
        add(out, -c, p(q, s));
      }
    return out;
  }

 private:
  ComplexMatrix zero() const {
    const int nn = n() * n();
    return ComplexMatrix::Zero(nn, nn);
  }

  const GeneratorAlgebra& alg_;
  int m_;
  const StructureTensors& t_;
  std::vector<Superoperator> h_;
  std::vector<Superoperator> p_;
};

double residual(const Superoperator& x, const Superoperator& y, const ComplexMatrix& rhs) {
  return max_abs(ComplexMatrix(x.mat() * y.mat() - y.mat() * x.mat() - rhs));
}

}  // namespace

double CommutationReport::max_residual() const {
  return std::max({rr, rh, rp, hh, hp, pp});
}

CommutationReport verify_commutation_tables(int n) {
  const GeneratorAlgebra alg(n);
  const Tables tab(alg);
  const int m = tab.m();
  CommutationReport rep;
  rep.n = n;

  std::vector<std::pair<int, int>> hpairs;
  std::vector<std::pair<int, int>> ppairs;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      hpairs.emplace_back(a, b);
      if (a != b) ppairs.emplace_back(a, b);
    }

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      rep.rr = std::max(rep.rr, residual(tab.r(i), tab.r(j), tab.rr(i, j)));
      ++rep.pairs_checked;
    }
    for (const auto& [a, b] : hpairs) {
      rep.rh = std::max(rep.rh, residual(tab.r(i), tab.h(a, b), tab.rh(i, a, b)));
      ++rep.pairs_checked;
    }
    for (const auto& [a, b] : ppairs) {
      rep.rp = std::max(rep.rp, residual(tab.r(i), tab.p(a, b), tab.rp(i, a, b)));
      ++rep.pairs_checked;
    }
  }
  for (const auto& [i, j] : hpairs) {
    for (const auto& [a, b] : hpairs) {
      rep.hh = std::max(rep.hh, residual(tab.h(i, j), tab.h(a, b), tab.hh(i, j, a, b)));
      ++rep.pairs_checked;
    }
    for (const auto& [a, b] : ppairs) {
      rep.hp = std::max(rep.hp, residual(tab.h(i, j), tab.p(a, b), tab.hp(i, j, a, b)));
      ++rep.pairs_checked;
    }
  }
  for (const auto& [i, j] : ppairs)
    for (const auto& [a, b] : ppairs) {
      rep.pp = std::max(rep.pp, residual(tab.p(i, j), tab.p(a, b), tab.pp(i, j, a, b)));
      ++rep.pairs_checked;
    }
  return rep;
}

}  // namespace dmsym
