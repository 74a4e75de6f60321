#include "jlt/constructs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jlt/errors.hpp"
#include "jlt/functionals.hpp"
#include "jlt/quadrature.hpp"

namespace jlt {

namespace {

constexpr double kDecayTarget = 1e-12;
constexpr std::size_t kFourierPoints = 32;

void require_open_unit(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw PreconditionError("mu must lie in (0, 1), got " + std::to_string(mu));
}

// Panel count resolving features of width log(1/mu) on [-pi, pi]; the
// integrands are analytic in a strip of that half-width.
std::size_t panels_for(double mu) {
  const double strip = -std::log(mu);
  return std::max<std::size_t>(32, static_cast<std::size_t>(std::ceil(4.0 * std::numbers::pi / strip)));
}

const GaussLegendre& fourier_rule() {
  thread_local const GaussLegendre rule(kFourierPoints);
  return rule;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sign-pattern decomposition

std::vector<int> SignDecomposition::conjugator(const SignTerm& term,
                                               std::span<const Index> sites) const {
  std::vector<int> out(sites.size(), 1);
  for (std::size_t s = 0; s < sites.size(); ++s) {
    for (std::size_t i = 0; i < bond_positions.size(); ++i) {
      if (term.signs[i] < 0 && bond_positions[i] < sites[s]) out[s] = -out[s];
    }
  }
  return out;
}

SignDecomposition sign_pattern_decomposition(const Perturbation& p) {
  SignDecomposition d;
  for (std::size_t i = 0; i < p.a().size(); ++i) {
    const double a = p.a()[i];
    const Index bond = p.a_offset() + static_cast<Index>(i);
    if (a < 0.0 || a > 1.0) {
      throw PreconditionError("sign-pattern decomposition needs 0 <= a_n <= 1; a_" +
                              std::to_string(bond) + " = " + std::to_string(a));
    }
    // a_n == 1 bonds would only contribute zero-weight terms
    if (a < 1.0) {
      d.bond_positions.push_back(bond);
      d.kappa.push_back(a);
    }
  }
  const std::size_t m = d.bond_positions.size();
  if (m > kMaxSubunitBonds) throw PreconditionError("too many bonds with a_n < 1");

  const std::size_t count = std::size_t{1} << m;
  d.terms.reserve(count);
  for (std::size_t pattern = 0; pattern < count; ++pattern) {
    SignTerm term;
    term.weight = 1.0;
    term.signs.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      // first bond is the most significant bit; +1 before -1
      const bool flipped = (pattern >> (m - 1 - i)) & 1U;
      term.signs[i] = flipped ? -1 : 1;
      term.weight *= 0.5 * (1.0 + term.signs[i] * d.kappa[i]);
    }
    d.terms.push_back(std::move(term));
  }
  return d;
}

std::vector<double> reconstruct_offdiagonal(const SignDecomposition& d) {
  std::vector<double> out(d.bond_positions.size(), 0.0);
  for (const SignTerm& t : d.terms) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t.weight * t.signs[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Birman-Schwinger operators

std::vector<SiteValue> positive_sites(const Perturbation& p) {
  std::vector<SiteValue> out;
  for (std::size_t i = 0; i < p.b().size(); ++i) {
    if (p.b()[i] > 0.0) out.emplace_back(p.b_offset() + static_cast<Index>(i), p.b()[i]);
  }
  return out;
}

Index resolvent_half_width(const Perturbation& p, double mu) {
  require_open_unit(mu);
  const auto decay = static_cast<Index>(std::floor(std::log(kDecayTarget) / std::log(mu))) + 1;
  return decay + std::max<Index>(0, p.support_extent()) + 1;
}

DenseSymmetric birman_schwinger(const Perturbation& p, double beta, Index half_width) {
  for (double b : p.b()) {
    if (b < 0.0) throw PreconditionError("Birman-Schwinger operator needs b_n >= 0");
  }
  const std::vector<SiteValue> sites = positive_sites(p);
  if (sites.empty()) throw PreconditionError("Birman-Schwinger operator needs some b_n > 0");
  if (!(beta > 2.0)) throw PreconditionError("beta must exceed 2");
  const double mu = mu_of_E(beta).mu;
  if (!(std::pow(mu, static_cast<double>(half_width)) < kDecayTarget)) {
    throw PreconditionError("half-width " + std::to_string(half_width) +
                            " too short for Green's function decay at beta = " + std::to_string(beta));
  }

  // LDL^T of beta - A; all pivots positive iff beta - A > 0
  const TruncatedTridiagonal a = truncate_offdiagonal(p, half_width);
  const std::size_t n = a.dim();
  std::vector<double> pivot(n);
  for (std::size_t k = 0; k < n; ++k) {
    pivot[k] = beta - (k == 0 ? 0.0 : a.offdiag[k - 1] * a.offdiag[k - 1] / pivot[k - 1]);
    if (pivot[k] == 0.0) throw NumericalError("beta - A is singular");
    if (pivot[k] < 0.0) throw PreconditionError("beta does not dominate the off-diagonal part");
  }
  // (beta - A) = L D L^T with L unit lower bidiagonal, L(k, k-1) = -a_{k-1} / pivot_{k-1}
  const auto solve = [&](std::size_t col, double rhs) {
    std::vector<double> x(n, 0.0);
    x[col] = rhs;
    for (std::size_t k = col + 1; k < n; ++k) x[k] = a.offdiag[k - 1] / pivot[k - 1] * x[k - 1];
    for (std::size_t k = 0; k < n; ++k) x[k] /= pivot[k];
    for (std::size_t k = n - 1; k-- > 0;) x[k] += a.offdiag[k] / pivot[k] * x[k + 1];
    return x;
  };

  const std::size_t m = sites.size();
  std::vector<std::vector<double>> columns(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto row = static_cast<std::size_t>(sites[j].first - a.lo);
    const std::vector<double> x = solve(row, std::sqrt(sites[j].second));
    columns[j].resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto r = static_cast<std::size_t>(sites[i].first - a.lo);
      columns[j][i] = std::sqrt(sites[i].second) * x[r];
    }
  }
  DenseSymmetric k(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) k.set(i, j, 0.5 * (columns[j][i] + columns[i][j]));
  }
  return k;
}

DenseSymmetric l_mu(const Perturbation& p, double mu, Index half_width) {
  require_open_unit(mu);
  const double beta = mu + 1.0 / mu;
  return (1.0 / mu - mu) * birman_schwinger(p, beta, half_width);
}

DenseSymmetric l_mu_free_closed_form(std::span<const SiteValue> sites, double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw PreconditionError("mu must lie in (0, 1]");
  DenseSymmetric l(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!(sites[i].second > 0.0)) throw PreconditionError("site values must be positive");
    for (std::size_t j = i; j < sites.size(); ++j) {
      const double dist = std::abs(static_cast<double>(sites[j].first - sites[i].first));
      l.set(i, j, std::sqrt(sites[i].second * sites[j].second) * std::pow(mu, dist));
    }
  }
  return l;
}

DenseSymmetric averaged_l_mu(const SignDecomposition& d, std::span<const SiteValue> sites,
                             double mu) {
  const DenseSymmetric free = l_mu_free_closed_form(sites, mu);
  std::vector<Index> idx(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) idx[i] = sites[i].first;
  DenseSymmetric avg(sites.size());
  for (const SignTerm& t : d.terms) avg += t.weight * free.conjugated(d.conjugator(t, idx));
  return avg;
}

std::vector<double> s_n_curve(const SignDecomposition& d, std::span<const SiteValue> sites,
                              std::size_t n, std::span<const double> mus) {
  if (n == 0 || n > sites.size()) throw PreconditionError("n must lie in [1, number of sites]");
  std::vector<double> out;
  out.reserve(mus.size());
  for (double mu : mus) out.push_back(eigenvalue_sum_top(averaged_l_mu(d, sites, mu), n));
  return out;
}

// ---------------------------------------------------------------------------
// Operator convexity and Ky-Fan averaging

double operator_convexity_gap(const DenseSymmetric& x1, const DenseSymmetric& x2, double beta,
                              double lam) {
  if (x1.dim() != x2.dim() || x1.dim() == 0) throw PreconditionError("dimension mismatch");
  if (!(lam >= 0.0 && lam <= 1.0)) throw PreconditionError("lambda must lie in [0, 1]");
  if (!(beta > dense_eigenvalues(x1).back()) || !(beta > dense_eigenvalues(x2).back())) {
    throw PreconditionError("beta must exceed the top eigenvalue of both matrices");
  }
  const auto resolvent = [beta](double x) { return 1.0 / (beta - x); };
  const DenseSymmetric mixed = lam * x1 + (1.0 - lam) * x2;
  const DenseSymmetric gap = lam * spectral_apply(x1, resolvent) +
                             (1.0 - lam) * spectral_apply(x2, resolvent) -
                             spectral_apply(mixed, resolvent);
  return dense_eigenvalues(gap).front();
}

std::pair<double, double> kyfan_averaging_check(const DenseSymmetric& t,
                                                std::span<const Conjugator> conjugators,
                                                std::size_t n) {
  if (conjugators.empty()) throw PreconditionError("need at least one conjugator");
  double total = 0.0;
  for (const Conjugator& c : conjugators) {
    if (!(c.weight >= 0.0)) throw PreconditionError("conjugator weights must be nonnegative");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("conjugator weights must sum to 1");
  if (dense_eigenvalues(t).front() < -1e-12 * std::max(1.0, t.frobenius_norm())) {
    throw PreconditionError("Ky-Fan averaging needs a positive semidefinite matrix");
  }
  DenseSymmetric avg(t.dim());
  for (const Conjugator& c : conjugators) avg += c.weight * t.conjugated(c.signs);
  return {kyfan(avg, n), kyfan(t, n)};
}

// ---------------------------------------------------------------------------
// g_mu

GmuDensity::GmuDensity(double mu) : mu_(mu) { require_open_unit(mu); }

double g_mu_eval(const GmuDensity& g, double k) {
  const double mu = g.mu();
  return (1.0 / mu - mu) / (-2.0 * std::cos(k) + 1.0 / mu + mu) / std::sqrt(2.0 * std::numbers::pi);
}

double fourier_g(const GmuDensity& g, Index n) {
  // g is even, so only the cosine part of e^{ink} survives
  const double freq = static_cast<double>(n);
  const auto f = [&](double k) { return std::cos(freq * k) * g_mu_eval(g, k); };
  const std::size_t panels = std::max(panels_for(g.mu()), static_cast<std::size_t>(std::abs(n)));
  return fourier_rule().integrate_panels(f, -std::numbers::pi, std::numbers::pi, panels) /
         std::sqrt(2.0 * std::numbers::pi);
}

double g_convolution(double mu, double nu, double k) {
  if (!(0.0 < mu && mu < nu && nu < 1.0)) throw PreconditionError("need 0 < mu < nu < 1");
  const GmuDensity outer(nu);
  const GmuDensity inner(mu / nu);
  const double norm = 1.0 / (2.0 * std::numbers::pi);
  const auto f = [&](double kp) { return g_mu_eval(outer, k - kp) * g_mu_eval(inner, kp) * norm; };
  const std::size_t panels = std::max(panels_for(nu), panels_for(mu / nu));
  return fourier_rule().integrate_panels(f, -std::numbers::pi, std::numbers::pi, panels);
}

}  // namespace jlt
