#include "jlt/suites.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "jlt/constructs.hpp"
#include "jlt/errors.hpp"
#include "jlt/instance_io.hpp"
#include "jlt/random.hpp"

namespace jlt {

namespace {

bool has_negative_a(const Perturbation& p) {
  return std::any_of(p.a().begin(), p.a().end(), [](double a) { return a < 0.0; });
}

VerificationReport make_report(const std::string& id, Inequality q, double lhs, double rhs,
                               const SpectrumOutside& s, double tol) {
  VerificationReport r;
  r.instance_id = id;
  r.inequality = q;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.n_used = s.n_used;
  r.est_error = s.est_error;
  r.pass = r.margin >= -tol;
  return r;
}

std::string dump_matrix(const DenseSymmetric& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < m.dim(); ++j) out += (j == 0 ? "" : ", ") + format_number(m(i, j));
    out += "]";
  }
  return out + "]";
}

// Records one check; `violation` is the amount by which it misses (<= 0 when
// satisfied). `what` builds the failure message lazily.
template <class Msg>
void record(SuiteResult& r, double violation, double tol, Msg&& what) {
  ++r.checks;
  if (violation > tol || std::isnan(violation)) {
    ++r.failures;
    r.worst = std::max(r.worst, violation);
    r.details.push_back(fmt::format("{} (violation {} > tol {})", what(), format_number(violation),
                                    format_number(tol)));
  }
}

std::size_t count_or(const SuiteOptions& o, std::size_t fallback) { return o.count ? o.count : fallback; }
double tol_or(const SuiteOptions& o, double fallback) { return o.tol.value_or(fallback); }

std::string instance_tag(const SuiteOptions& o, std::size_t i, const Perturbation& p) {
  return fmt::format("seed {} instance {} {}", o.seed, i, serialize_instance(p));
}

std::vector<double> descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

DenseSymmetric random_symmetric(CounterRng& rng, std::size_t dim) {
  DenseSymmetric m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) m.set(i, j, 2.0 * rng.uniform() - 1.0);
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Inequality reports

std::vector<VerificationReport> eq3_reports(const Perturbation& p, const SpectrumOutside& s,
                                            const std::string& id, const RieszConfig& riesz) {
  double f_sum = 0.0;
  for (double e : s.e_plus) f_sum += ks_F(e);
  for (double e : s.e_minus) f_sum += ks_F(e);

  double b2 = 0.0;
  for (double b : p.b()) b2 += b * b;
  double g_sum = 0.0;
  double g2_sum = 0.0;
  for (double a : p.a()) {
    const double g = a == 0.0 ? std::numeric_limits<double>::infinity() : ks_G(a);
    g_sum += g;
    g2_sum += g * g;
  }

  RieszConfig r32 = riesz;
  r32.gamma = 1.5;
  const double riesz_sum = riesz_lhs(s, Sign::plus, r32) + riesz_lhs(s, Sign::minus, r32);

  VerificationReport printed = make_report(id, Inequality::eq3_report, f_sum, b2 + 2.0 * g2_sum, s, 0.0);
  printed.variant = "as_printed";
  printed.half_f_sum = 0.5 * f_sum;
  printed.riesz_three_halves_sum = riesz_sum;
  VerificationReport unsquared = make_report(id, Inequality::eq3_report, f_sum, b2 + 2.0 * g_sum, s, 0.0);
  unsquared.variant = "g_unsquared";
  return {printed, unsquared};
}

InstanceVerification verify_instance(const Perturbation& p, const std::string& id,
                                     const VerifyOptions& opts) {
  InstanceVerification v;
  v.spectrum = eigenvalues_outside(p, opts.eigen);
  const SpectrumOutside& s = v.spectrum;
  const double lhs = lt_lhs_main(s);
  v.reports.push_back(make_report(id, Inequality::eq1, lhs, rhs_hs(p), s, opts.tol));
  v.reports.push_back(make_report(id, Inequality::eq2, lhs, rhs_main(p), s, opts.tol));

  v.eq4_skipped = has_negative_a(p);
  if (!v.eq4_skipped) {
    for (double g : opts.gammas) {
      RieszConfig cfg = opts.riesz;
      cfg.gamma = g;
      for (Sign sign : {Sign::plus, Sign::minus}) {
        VerificationReport r =
            make_report(id, sign == Sign::plus ? Inequality::eq4_plus : Inequality::eq4_minus,
                        riesz_lhs(s, sign, cfg), riesz_rhs(p, g, sign), s, opts.tol);
        r.gamma = g;
        v.reports.push_back(std::move(r));
      }
    }
  }
  if (opts.eq3) {
    for (VerificationReport& r : eq3_reports(p, s, id, opts.riesz)) v.reports.push_back(std::move(r));
  }
  return v;
}

std::vector<SweepRow> sweep_instance(const Perturbation& p, const std::string& id,
                                     const std::vector<double>& gammas, double tol,
                                     const EigenConfig& eigen, const RieszConfig& riesz) {
  for (double g : gammas) {
    if (!(g > 0.5)) throw PreconditionError("gamma grid must lie above 1/2");
  }
  if (has_negative_a(p)) throw PreconditionError("Riesz-mean sweep needs a_n >= 0");
  const SpectrumOutside s = eigenvalues_outside(p, eigen);
  std::vector<SweepRow> rows;
  for (double g : gammas) {
    RieszConfig cfg = riesz;
    cfg.gamma = g;
    for (Sign sign : {Sign::plus, Sign::minus}) {
      SweepRow row;
      row.instance_id = id;
      row.gamma = g;
      row.sign = sign;
      for (double e : sign == Sign::plus ? s.e_plus : s.e_minus) {
        const double mean = riesz_mean(e, cfg);
        const auto [lb1, lb2] = remark_lower_bounds(e, g);
        row.lhs += mean;
        row.remark_bound_1 += lb1;
        row.remark_bound_2 += lb2;
        row.remark_ok = row.remark_ok && lb1 <= mean + tol && lb2 <= mean + tol;
      }
      row.rhs = riesz_rhs(p, g, sign);
      row.margin = row.rhs - row.lhs;
      row.pass = row.margin >= -tol;
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

SharpnessRow sharpness_row(const Perturbation& p, double param, double closed, const EigenConfig& cfg) {
  SharpnessRow row;
  const SpectrumOutside s = eigenvalues_outside(p, cfg);
  row.param = param;
  row.lhs = lt_lhs_main(s);
  row.rhs = rhs_main(p);
  row.ratio = row.lhs / row.rhs;
  row.ratio_closed_form = closed;
  row.e_plus = s.e_plus;
  row.e_minus = s.e_minus;
  row.n_used = s.n_used;
  row.est_error = s.est_error;
  return row;
}

}  // namespace

SharpnessRow sharpness_bond(double a, const EigenConfig& cfg) {
  if (!(a > 1.0)) throw PreconditionError("bond sharpness needs a > 1");
  return sharpness_row(make_perturbation(0, {a}, 0, {}), a, (a + 1.0) / (2.0 * a), cfg);
}

SharpnessRow sharpness_site(double b, const EigenConfig& cfg) {
  if (b == 0.0) throw PreconditionError("site sharpness needs b != 0");
  return sharpness_row(make_perturbation(0, {}, 0, {b}), b, 1.0, cfg);
}

// ---------------------------------------------------------------------------
// Construct suites

SuiteResult suite_decomposition(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "decomposition";
  const double tol = tol_or(o, 1e-12);
  const RandomModel model = subunit_model(o.seed);
  for (std::size_t i = 0; i < count_or(o, 200); ++i) {
    const Perturbation p = random_instance(model, i);
    const SignDecomposition d = sign_pattern_decomposition(p);
    const auto tag = [&] { return instance_tag(o, i, p); };

    double total = 0.0;
    double most_negative = 0.0;
    for (const SignTerm& t : d.terms) {
      total += t.weight;
      most_negative = std::min(most_negative, t.weight);
    }
    record(r, std::abs(total - 1.0), tol, [&] { return "weights do not sum to 1: " + tag(); });
    record(r, -most_negative, tol, [&] { return "negative weight: " + tag(); });

    const std::vector<double> rebuilt = reconstruct_offdiagonal(d);
    for (std::size_t k = 0; k < rebuilt.size(); ++k) {
      record(r, std::abs(rebuilt[k] - d.kappa[k]), tol, [&] {
        return fmt::format("bond {} reconstructs to {}: {}", d.bond_positions[k], format_number(rebuilt[k]), tag());
      });
    }

    // sum_sigma lambda_sigma D_sigma A_1 D_sigma against A on every bond of the support
    const SiteRange sup = p.support();
    if (sup.empty()) continue;
    std::vector<Index> sites;
    for (Index n = sup.lo - 1; n <= sup.hi + 1; ++n) sites.push_back(n);
    std::vector<double> bond_sum(sites.size() - 1, 0.0);
    for (const SignTerm& t : d.terms) {
      const std::vector<int> s = d.conjugator(t, sites);
      for (std::size_t k = 0; k + 1 < sites.size(); ++k) bond_sum[k] += t.weight * s[k] * s[k + 1];
    }
    for (std::size_t k = 0; k + 1 < sites.size(); ++k) {
      record(r, std::abs(bond_sum[k] - p.a_at(sites[k])), tol,
             [&] { return fmt::format("convex combination misses a_{}: {}", sites[k], tag()); });
    }
  }
  return r;
}

SuiteResult suite_birman_schwinger(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "bs";
  const double bs_tol = tol_or(o, 1e-6);
  const double kernel_tol = tol_or(o, 1e-8);
  const RandomModel model = subunit_model(o.seed);
  for (std::size_t i = 0; i < count_or(o, 100); ++i) {
    const Perturbation p = random_instance(model, i);
    const auto tag = [&] { return instance_tag(o, i, p); };
    const std::vector<SiteValue> sites = positive_sites(p);

    const SpectrumOutside s = eigenvalues_outside(p);
    for (std::size_t j = 0; j < s.e_plus.size(); ++j) {
      const double e = s.e_plus[j];
      const DenseSymmetric k = birman_schwinger(p, e, resolvent_half_width(p, mu_of_E(e).mu));
      const std::vector<double> ev = descending(dense_eigenvalues(k));
      const double v = j < ev.size() ? ev[j] : 0.0;
      record(r, std::abs(v - 1.0), bs_tol, [&] {
        return fmt::format("eigenvalue {} of K(A; E_{} = {}) is {}; K = {}: {}", j + 1, j + 1, format_number(e),
                           format_number(v), dump_matrix(k), tag());
      });
    }

    const Perturbation free_a = make_perturbation(0, {}, p.b_offset(), {p.b().begin(), p.b().end()});
    const SignDecomposition d = sign_pattern_decomposition(p);
    for (double mu : {0.2, 0.5, 0.8}) {
      const DenseSymmetric resolvent = l_mu(free_a, mu, resolvent_half_width(free_a, mu));
      const DenseSymmetric closed = l_mu_free_closed_form(sites, mu);
      record(r, resolvent.max_abs_diff(closed), kernel_tol, [&] {
        return fmt::format("L_mu kernel mismatch at mu = {}: {} vs {}: {}", mu, dump_matrix(resolvent),
                           dump_matrix(closed), tag());
      });

      const DenseSymmetric lm = l_mu(p, mu, resolvent_half_width(p, mu));
      const DenseSymmetric avg = averaged_l_mu(d, sites, mu);
      const std::vector<double> lo = dense_eigenvalues(lm);
      const std::vector<double> hi = dense_eigenvalues(avg);
      double worst = 0.0;
      for (std::size_t k = 0; k < lo.size(); ++k) worst = std::max(worst, lo[k] - hi[k]);
      worst = std::max(worst, -dense_eigenvalues(avg - lm).front());
      record(r, worst, kernel_tol, [&] {
        return fmt::format("L_mu(A) not dominated at mu = {}: {} vs {}: {}", mu, dump_matrix(lm),
                           dump_matrix(avg), tag());
      });
    }
  }
  return r;
}

SuiteResult suite_smu(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "smu";
  const double tol = tol_or(o, 1e-10);
  const RandomModel model = subunit_model(o.seed);
  for (std::size_t i = 0; i < count_or(o, 200); ++i) {
    const Perturbation p = random_instance(model, i);
    const auto tag = [&] { return instance_tag(o, i, p); };
    const std::vector<SiteValue> sites = positive_sites(p);
    const SignDecomposition d = sign_pattern_decomposition(p);
    for (std::size_t n = 1; n <= sites.size(); ++n) {
      const std::vector<double> curve = s_n_curve(d, sites, n, kMuGrid);
      double worst = 0.0;
      for (std::size_t x = 0; x < curve.size(); ++x) {
        for (std::size_t y = x + 1; y < curve.size(); ++y) worst = std::max(worst, curve[x] - curve[y]);
      }
      record(r, worst, tol, [&] { return fmt::format("S_{} decreases along mu: {}", n, tag()); });
    }
    double trace_b = 0.0;
    for (const auto& [_, b] : sites) trace_b += b;
    const double top = s_n_curve(d, sites, sites.size(), std::vector<double>{1.0}).front();
    record(r, std::abs(top - trace_b), tol, [&] {
      return fmt::format("trace at mu = 1 is {} but sum b = {}: {}", format_number(top), format_number(trace_b),
                         tag());
    });
  }
  return r;
}

SuiteResult suite_kyfan(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "kyfan";
  const double tol = tol_or(o, 1e-10);
  for (std::size_t i = 0; i < count_or(o, 200); ++i) {
    CounterRng rng(CounterRng(o.seed).at(i));
    const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 8));
    // T = G G^T is positive semidefinite
    std::vector<double> g(dim * dim);
    for (double& x : g) x = 2.0 * rng.uniform() - 1.0;
    DenseSymmetric t(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = a; b < dim; ++b) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) s += g[a * dim + k] * g[b * dim + k];
        t.set(a, b, s);
      }
    }
    const auto count = static_cast<std::size_t>(rng.uniform_int(1, 6));
    std::vector<Conjugator> conj(count);
    double total = 0.0;
    for (Conjugator& c : conj) {
      c.weight = 1.0 - rng.uniform();
      total += c.weight;
      c.signs.resize(dim);
      for (int& s : c.signs) s = rng.uniform() < 0.5 ? -1 : 1;
    }
    for (Conjugator& c : conj) c.weight /= total;
    for (std::size_t n = 1; n <= dim; ++n) {
      const auto [avg, orig] = kyfan_averaging_check(t, conj, n);
      record(r, avg - orig, tol, [&] {
        return fmt::format("seed {} draw {}: averaged {}-norm {} exceeds {}; T = {}", o.seed, i, n,
                           format_number(avg), format_number(orig), dump_matrix(t));
      });
    }
  }
  return r;
}

SuiteResult suite_gmu(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "gmu";
  const double fourier_tol = tol_or(o, 1e-10);
  const double conv_tol = tol_or(o, 1e-8);
  for (double mu : {0.3, 0.5, 0.7}) {
    const GmuDensity g(mu);
    for (Index n = -12; n <= 12; ++n) {
      const double c = fourier_g(g, n);
      const double expect = std::pow(mu, static_cast<double>(std::abs(n)));
      record(r, std::abs(c - expect), fourier_tol, [&] {
        return fmt::format("Fourier coefficient {} of g_{} is {}", n, mu, format_number(c));
      });
    }
  }
  constexpr std::size_t kGrid = 256;
  for (const auto& [mu, nu] : {std::pair{0.25, 0.5}, std::pair{0.35, 0.7}}) {
    const GmuDensity target(mu);
    for (std::size_t i = 0; i < kGrid; ++i) {
      const double k = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(i) / kGrid;
      const double conv = g_convolution(mu, nu, k);
      const double expect = g_mu_eval(target, k) / std::sqrt(2.0 * std::numbers::pi);
      record(r, std::abs(conv - expect), conv_tol, [&] {
        return fmt::format("convolution (mu, nu) = ({}, {}) at k = {}", mu, nu, format_number(k));
      });
    }
  }
  return r;
}

SuiteResult suite_convexity(const SuiteOptions& o) {
  SuiteResult r;
  r.name = "convexity";
  const double tol = tol_or(o, 1e-10);
  for (std::size_t i = 0; i < count_or(o, 200); ++i) {
    CounterRng rng(CounterRng(o.seed).at(i));
    const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const DenseSymmetric x1 = random_symmetric(rng, dim);
    const DenseSymmetric x2 = random_symmetric(rng, dim);
    const double top = std::max(dense_eigenvalues(x1).back(), dense_eigenvalues(x2).back());
    const double beta = top + 0.05 + rng.uniform();
    const double lam = rng.uniform();
    const double gap = operator_convexity_gap(x1, x2, beta, lam);
    record(r, -gap, tol, [&] {
      return fmt::format("seed {} draw {}: gap {} at beta = {}, lambda = {}; X1 = {}, X2 = {}", o.seed, i,
                         format_number(gap), format_number(beta), format_number(lam), dump_matrix(x1),
                         dump_matrix(x2));
    });
  }
  return r;
}

}  // namespace jlt
