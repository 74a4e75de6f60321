// Acceptance gate: each criterion runs at its stated tolerance and prints one
// PASS/FAIL line. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "jlt/constructs.hpp"
#include "jlt/eigen.hpp"
#include "jlt/functionals.hpp"
#include "jlt/random.hpp"
#include "jlt/suites.hpp"

using namespace jlt;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
};

// Largest observed deviation against a tolerance; a check passes when the
// deviation is at most the tolerance.
struct Worst {
  double tol = 0.0;
  double deviation = -std::numeric_limits<double>::infinity();
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string where;

  explicit Worst(double t) : tol(t) {}

  void check(double d, const std::string& at) {
    ++checks;
    if (!(d <= tol)) ++failures;
    if (d > deviation || std::isnan(d)) {
      deviation = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
      where = at;
    }
  }
  [[nodiscard]] bool ok() const { return checks > 0 && failures == 0; }
  [[nodiscard]] std::string text() const {
    return fmt::format("{} checks, {} over tolerance, worst {:.3g} (tol {:.0e}) at {}", checks, failures,
                       deviation, tol, where);
  }
};

constexpr std::uint64_t kSeed = 1;

DenseSymmetric random_symmetric(CounterRng& rng, std::size_t n) {
  DenseSymmetric m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) m.set(i, j, 2.0 * rng.uniform() - 1.0);
  }
  return m;
}

std::vector<Perturbation> default_instances(std::size_t n) {
  std::vector<Perturbation> out;
  RandomModel m;
  m.seed = kSeed;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_instance(m, i));
  return out;
}

Outcome main_inequality() {
  const auto t0 = std::chrono::steady_clock::now();
  Worst w(1e-7);
  const std::vector<Perturbation> inst = default_instances(500);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const SpectrumOutside s = eigenvalues_outside(inst[i]);
    w.check(lt_lhs_main(s) - rhs_main(inst[i]), random_instance_id(kSeed, i));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {w.ok() && secs < 60.0, fmt::format("{}; {:.2f} s (limit 60 s)", w.text(), secs)};
}

Outcome weaker_inequality() {
  Worst w(1e-7);
  Worst order(0.0);
  const std::vector<Perturbation> inst = default_instances(500);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const SpectrumOutside s = eigenvalues_outside(inst[i]);
    w.check(lt_lhs_main(s) - rhs_hs(inst[i]), random_instance_id(kSeed, i));
    order.check(rhs_main(inst[i]) - rhs_hs(inst[i]), random_instance_id(kSeed, i));
  }
  return {w.ok() && order.ok(), fmt::format("{}; rhs_main <= rhs_hs: {}", w.text(), order.text())};
}

Outcome single_site() {
  const Perturbation p = make_perturbation(0, {}, 0, {1.5});
  const SpectrumOutside s = eigenvalues_outside(p);
  if (s.e_plus.size() != 1 || !s.e_minus.empty()) return {false, "wrong eigenvalue count"};
  const double de = std::abs(s.e_plus[0] - 2.5);
  const double dm = std::abs(rhs_main(p) - lt_lhs_main(s));
  return {de <= 1e-8 && dm <= 1e-8, fmt::format("|E - 2.5| = {:.3g}, |rhs - lhs| = {:.3g} (tol 1e-8)", de, dm)};
}

Outcome sharpness() {
  Worst e(1e-8);
  Worst ratio(1e-6);
  bool increasing = true;
  double last = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const double a = 1.0 + std::ldexp(1.0, -k);
    const SharpnessRow r = sharpness_bond(a);
    const double closed = a + 1.0 / a;
    if (r.e_plus.size() != 1 || r.e_minus.size() != 1) return {false, fmt::format("k = {}: wrong eigenvalue count", k)};
    e.check(std::abs(r.e_plus[0] - closed), fmt::format("k = {} (E+)", k));
    e.check(std::abs(r.e_minus[0] + closed), fmt::format("k = {} (E-)", k));
    ratio.check(std::abs(r.ratio - (a + 1.0) / (2.0 * a)), fmt::format("k = {}", k));
    increasing = increasing && r.ratio > last;
    last = r.ratio;
  }
  return {e.ok() && ratio.ok() && increasing,
          fmt::format("eigenvalues: {}; ratio: {}; increasing: {}; final ratio {:.12f}", e.text(), ratio.text(),
                      increasing, last)};
}

Outcome birman_schwinger_principle() {
  Worst w(1e-6);
  const RandomModel m = subunit_model(kSeed);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Perturbation p = random_instance(m, i);
    const SpectrumOutside s = eigenvalues_outside(p);
    for (std::size_t j = 0; j < s.e_plus.size(); ++j) {
      const double e = s.e_plus[j];
      const std::vector<double> ev = dense_eigenvalues(birman_schwinger(p, e, resolvent_half_width(p, mu_of_E(e).mu)));
      const double jth = ev.size() > j ? ev[ev.size() - 1 - j] : 0.0;
      w.check(std::abs(jth - 1.0), fmt::format("{} j = {}", random_instance_id(kSeed, i), j + 1));
    }
  }
  return {w.ok(), w.text()};
}

Outcome kernel_representation() {
  Worst w(1e-8);
  RandomModel m = subunit_model(kSeed);
  m.a_bonds_min = 0;
  m.a_bonds_max = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Perturbation p = random_instance(m, i);
    const std::vector<SiteValue> sites = positive_sites(p);
    for (double mu : {0.2, 0.5, 0.8}) {
      const double d = l_mu(p, mu, resolvent_half_width(p, mu)).max_abs_diff(l_mu_free_closed_form(sites, mu));
      w.check(d, fmt::format("{} mu = {}", random_instance_id(kSeed, i), mu));
    }
  }
  return {w.ok(), w.text()};
}

Outcome smu_monotonicity() {
  Worst w(1e-10);
  const RandomModel m = subunit_model(kSeed);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Perturbation p = random_instance(m, i);
    const SignDecomposition d = sign_pattern_decomposition(p);
    const std::vector<SiteValue> sites = positive_sites(p);
    for (std::size_t n = 1; n <= sites.size(); ++n) {
      const std::vector<double> s = s_n_curve(d, sites, n, kMuGrid);
      for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = a + 1; b < s.size(); ++b) {
          w.check(s[a] - s[b], fmt::format("{} n = {}", random_instance_id(kSeed, i), n));
        }
      }
    }
  }
  return {w.ok(), w.text()};
}

Outcome operator_convexity() {
  Worst w(1e-10);
  for (std::uint64_t i = 0; i < 200; ++i) {
    CounterRng rng(CounterRng(kSeed).at(i));
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const DenseSymmetric x1 = random_symmetric(rng, n);
    const DenseSymmetric x2 = random_symmetric(rng, n);
    const double top = std::max(dense_eigenvalues(x1).back(), dense_eigenvalues(x2).back());
    const double beta = top + 0.05 + rng.uniform();
    const double lam = rng.uniform();
    w.check(-operator_convexity_gap(x1, x2, beta, lam), fmt::format("pair {}", i));
  }
  return {w.ok(), w.text()};
}

Outcome kyfan_averaging() {
  Worst w(1e-10);
  for (std::uint64_t i = 0; i < 200; ++i) {
    CounterRng rng(CounterRng(kSeed + 1000).at(i));
    const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const DenseSymmetric g = random_symmetric(rng, dim);
    // T = G^2 is positive semidefinite.
    DenseSymmetric t(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = a; b < dim; ++b) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) s += g(a, k) * g(k, b);
        t.set(a, b, s);
      }
    }
    std::vector<Conjugator> conj(static_cast<std::size_t>(rng.uniform_int(1, 6)));
    double total = 0.0;
    for (Conjugator& c : conj) {
      c.weight = 1.0 - rng.uniform();
      total += c.weight;
      for (std::size_t k = 0; k < dim; ++k) c.signs.push_back(rng.uniform() < 0.5 ? -1 : 1);
    }
    for (Conjugator& c : conj) c.weight /= total;
    for (std::size_t n = 1; n <= dim; ++n) {
      const auto [avg, orig] = kyfan_averaging_check(t, conj, n);
      w.check(avg - orig, fmt::format("matrix {} n = {}", i, n));
    }
  }
  return {w.ok(), w.text()};
}

Outcome gmu_identities() {
  Worst fourier(1e-10);
  for (double mu : {0.3, 0.5, 0.7}) {
    for (Index n = -12; n <= 12; ++n) {
      const double want = std::pow(mu, std::abs(static_cast<double>(n)));
      fourier.check(std::abs(fourier_g(GmuDensity(mu), n) - want), fmt::format("mu = {} n = {}", mu, n));
    }
  }
  Worst conv(1e-8);
  for (const auto& [mu, nu] : {std::pair{0.25, 0.5}, std::pair{0.35, 0.7}}) {
    const GmuDensity target(mu);
    for (int i = 0; i < 256; ++i) {
      const double k = -std::numbers::pi + 2.0 * std::numbers::pi * i / 256.0;
      const double want = g_mu_eval(target, k) / std::sqrt(2.0 * std::numbers::pi);
      conv.check(std::abs(g_convolution(mu, nu, k) - want), fmt::format("({}, {}) k = {:.4f}", mu, nu, k));
    }
  }
  return {fourier.ok() && conv.ok(), fmt::format("Fourier: {}; convolution: {}", fourier.text(), conv.text())};
}

Outcome riesz_means() {
  Worst closed(1e-9);
  RieszConfig three_halves;
  three_halves.gamma = 1.5;
  for (double e : {2.1, 2.5, 3.0, 5.0, 10.0}) {
    const double r = std::sqrt(e * e - 4.0);
    const double want = 0.5 * e * r - 2.0 * std::log((e + r) / 2.0);
    closed.check(std::abs(riesz_mean(e, three_halves) - want), fmt::format("e = {}", e));
  }
  Worst eq4(1e-7);
  Worst remark(0.0);
  const std::vector<Perturbation> inst = default_instances(200);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const SpectrumOutside s = eigenvalues_outside(inst[i]);
    const std::string id = random_instance_id(kSeed, i);
    for (double g : {0.75, 1.0, 1.5, 2.5}) {
      RieszConfig c;
      c.gamma = g;
      for (Sign sign : {Sign::plus, Sign::minus}) {
        const double margin = riesz_rhs(inst[i], g, sign) - riesz_lhs(s, sign, c);
        eq4.check(-margin, fmt::format("{} gamma = {} {}", id, g, sign == Sign::plus ? "+" : "-"));
      }
      std::vector<double> all = s.e_plus;
      all.insert(all.end(), s.e_minus.begin(), s.e_minus.end());
      for (double e : all) {
        const auto [b1, b2] = remark_lower_bounds(e, g);
        const double r = riesz_mean(e, c);
        remark.check(b1 - r, fmt::format("{} gamma = {} E = {:.6f} (first)", id, g, e));
        remark.check(b2 - r, fmt::format("{} gamma = {} E = {:.6f} (second)", id, g, e));
      }
    }
  }
  return {closed.ok() && eq4.ok() && remark.ok(),
          fmt::format("closed form: {}; eq4: {}; remark bounds: {}", closed.text(), eq4.text(), remark.text())};
}

Outcome layer_cake() {
  Worst w(1e-8);
  for (double c : {0.5, 1.0, 2.0}) {
    for (double g : {0.75, 1.5, 2.5}) {
      RieszConfig cfg;
      cfg.gamma = g;
      const double want = beta_fn(g - 0.5, 2.0) * std::pow(c, g + 0.5);
      w.check(std::abs(layer_cake_integral(c, cfg) - want), fmt::format("c = {} gamma = {}", c, g));
    }
  }
  return {w.ok(), w.text()};
}

Outcome unitary_equivalence() {
  Worst w(1e-9);
  bool counts = true;
  const std::vector<Perturbation> inst = default_instances(100);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const SpectrumOutside s = eigenvalues_outside(inst[i]);
    const SpectrumOutside n = eigenvalues_outside(negate_b(inst[i]));
    const std::string id = random_instance_id(kSeed, i);
    if (s.e_plus.size() != n.e_minus.size() || s.e_minus.size() != n.e_plus.size()) {
      counts = false;
      continue;
    }
    for (std::size_t k = 0; k < s.e_plus.size(); ++k) w.check(std::abs(s.e_plus[k] + n.e_minus[k]), id);
    for (std::size_t k = 0; k < s.e_minus.size(); ++k) w.check(std::abs(s.e_minus[k] + n.e_plus[k]), id);
  }
  return {w.ok() && counts, fmt::format("{}; counts match: {}", w.text(), counts)};
}

Outcome eq3_report() {
  const std::vector<Perturbation> inst = default_instances(20);
  std::size_t rows = 0;
  bool ok = true;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const InstanceVerification v = verify_instance(inst[i], random_instance_id(kSeed, i), VerifyOptions{});
    std::vector<std::string> variants;
    for (const VerificationReport& r : v.reports) {
      if (r.inequality != Inequality::eq3_report) continue;
      ++rows;
      variants.push_back(r.variant);
      double f = 0.0;
      for (double e : v.spectrum.e_plus) f += ks_F(e);
      for (double e : v.spectrum.e_minus) f += ks_F(e);
      ok = ok && r.informational() && std::abs(r.lhs - f) <= 1e-12 * std::max(1.0, f);
    }
    ok = ok && variants == std::vector<std::string>{"as_printed", "g_unsquared"};
  }
  return {ok, fmt::format("{} informational rows (as printed and G unsquared) over {} instances", rows, inst.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"main eigenvalue-sum inequality on 500 random instances", main_inequality},
      {"weaker |a-1| inequality and rhs ordering", weaker_inequality},
      {"single-site saturation", single_site},
      {"single-bond sharpness family", sharpness},
      {"Birman-Schwinger principle", birman_schwinger_principle},
      {"L_mu kernel representation", kernel_representation},
      {"S_n monotonicity in mu", smu_monotonicity},
      {"operator convexity of the resolvent", operator_convexity},
      {"Ky-Fan averaging", kyfan_averaging},
      {"g_mu Fourier coefficients and convolution", gmu_identities},
      {"Riesz means", riesz_means},
      {"layer-cake Beta identity", layer_cake},
      {"unitary equivalence under b -> -b", unitary_equivalence},
      {"Killip-Simon type informational report", eq3_report},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    fmt::print("{} {:>2}. {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.summary);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
