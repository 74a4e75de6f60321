#include "jlt/functionals.hpp"

#include <cmath>
#include <map>
#include <string>

#include "jlt/errors.hpp"
#include "jlt/quadrature.hpp"

namespace jlt {

namespace {

constexpr double kGradingRatio = 0.15;

const GaussLegendre& rule(std::size_t n) {
  thread_local std::map<std::size_t, GaussLegendre> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
  return it->second;
}

void require_outside_edge(double e) {
  if (!(std::abs(e) > 2.0) || !std::isfinite(e)) {
    throw DomainError("|e| must exceed 2, got " + std::to_string(e));
  }
}

// sqrt(E^2 - 4) written as a product so it stays accurate near E = 2.
double edge_root(double e) {
  const double a = std::abs(e);
  return std::sqrt((a - 2.0) * (a + 2.0));
}

}  // namespace

void RieszConfig::validate() const {
  if (!(gamma > 0.5) || !std::isfinite(gamma)) throw PreconditionError("gamma must exceed 1/2");
  if (quad_points < 8) throw PreconditionError("quad_points must be >= 8");
  if (subdivisions < 1) throw PreconditionError("subdivisions must be >= 1");
}

EdgeParam mu_of_E(double e) {
  require_outside_edge(e);
  const double a = std::abs(e);
  // 2 / (a + sqrt(a^2 - 4)) is the small root of mu^2 - a mu + 1 without cancellation
  return {e, 2.0 / (a + edge_root(a)), a};
}

double lt_lhs_main(const SpectrumOutside& s) {
  double sum = 0.0;
  for (double e : s.e_plus) sum += edge_root(e);
  for (double e : s.e_minus) sum += edge_root(e);
  return sum;
}

double rhs_main(const Perturbation& p) {
  double sum = 0.0;
  for (double b : p.b()) sum += std::abs(b);
  for (double a : p.a()) sum += 4.0 * positive_part(a - 1.0);
  return sum;
}

double rhs_hs(const Perturbation& p) {
  double sum = 0.0;
  for (double b : p.b()) sum += std::abs(b);
  for (double a : p.a()) sum += 4.0 * std::abs(a - 1.0);
  return sum;
}

double ks_F(double e) {
  require_outside_edge(e);
  const double a = std::abs(e);
  const double beta = 0.5 * (a + edge_root(a));
  const double b2 = beta * beta;
  return b2 - 1.0 / b2 - std::log(b2);
}

double ks_G(double a) {
  if (a == 0.0 || !std::isfinite(a)) throw DomainError("G(a) needs a finite nonzero a");
  const double a2 = a * a;
  return a2 - 1.0 - std::log(a2);
}

double beta_fn(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("Beta function needs positive finite arguments");
  }
  // tgamma is correctly scaled up to ~171; beyond that go through lgamma
  if (x + y < 170.0) return std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y);
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double riesz_mean(double e, const RieszConfig& cfg) {
  cfg.validate();
  require_outside_edge(e);
  const double big = std::abs(e);
  const double len = big - 2.0;
  const double half = 0.5 * len;
  const double g = cfg.gamma;
  const GaussLegendre& gl = rule(cfg.quad_points);

  // t in [2, 2 + len/2]: t = 2 + w^2 turns the sqrt(t - 2) edge into w.
  const auto near_two = [&](double w) {
    const double w2 = w * w;
    return 2.0 * w2 * std::sqrt(4.0 + w2) * std::pow(len - w2, g - 1.5);
  };
  const double lower = gl.integrate_panels(near_two, 0.0, std::sqrt(half), cfg.subdivisions);

  // u = |e| - t in [0, len/2]; the weight u^{gamma - 3/2}.
  const auto root = [&](double u) { return std::sqrt((len - u) * (big + 2.0 - u)); };
  double upper = 0.0;
  if (g < 1.5) {
    // u = v^p with p (gamma - 1/2) = 1 absorbs the weight exactly
    const double p = 2.0 / (2.0 * g - 1.0);
    const auto f = [&](double v) { return p * root(std::pow(v, p)); };
    upper = gl.integrate_graded(f, 0.0, std::pow(half, 1.0 / p), cfg.subdivisions, kGradingRatio);
  } else {
    const auto f = [&](double u) { return root(u) * std::pow(u, g - 1.5); };
    upper = gl.integrate_graded(f, 0.0, half, cfg.subdivisions, kGradingRatio);
  }
  return lower + upper;
}

double riesz_lhs(const SpectrumOutside& s, Sign sign, const RieszConfig& cfg) {
  double sum = 0.0;
  for (double e : sign == Sign::plus ? s.e_plus : s.e_minus) sum += riesz_mean(e, cfg);
  return sum;
}

double riesz_rhs(const Perturbation& p, double gamma, Sign sign) {
  if (!(gamma > 0.5)) throw PreconditionError("gamma must exceed 1/2");
  for (std::size_t i = 0; i < p.a().size(); ++i) {
    if (p.a()[i] < 0.0) {
      throw PreconditionError("Riesz-mean bound needs a_n >= 0; a_" +
                              std::to_string(p.a_offset() + static_cast<Index>(i)) + " < 0");
    }
  }
  const SiteRange s = p.support();
  double sum = 0.0;
  for (Index n = s.lo; n <= s.hi; ++n) {
    const double b = p.b_at(n);
    const double v = (sign == Sign::plus ? positive_part(b) : negative_part(b)) +
                     positive_part(p.a_at(n) - 1.0) + positive_part(p.a_at(n - 1) - 1.0);
    if (v > 0.0) sum += std::pow(v, gamma + 0.5);
  }
  return beta_fn(gamma - 0.5, 2.0) * sum;
}

std::pair<double, double> remark_lower_bounds(double e, double gamma) {
  require_outside_edge(e);
  if (!(gamma > 0.5)) throw DomainError("gamma must exceed 1/2");
  const double d = std::abs(e) - 2.0;
  return {2.0 * beta_fn(gamma - 0.5, 1.5) * std::pow(d, gamma),
          beta_fn(gamma - 0.5, 2.0) * std::pow(d, gamma + 0.5)};
}

double layer_cake_integral(double c, const RieszConfig& cfg) {
  cfg.validate();
  if (!(c >= 0.0)) throw DomainError("layer-cake level must be nonnegative");
  if (c == 0.0) return 0.0;
  const double g = cfg.gamma;
  const GaussLegendre& gl = rule(cfg.quad_points);
  // s = v^p removes the s^{gamma - 3/2} weight
  const double p = 2.0 / (2.0 * g - 1.0);
  const auto f = [&](double v) { return p * (c - std::pow(v, p)); };
  return gl.integrate_graded(f, 0.0, std::pow(c, 1.0 / p), cfg.subdivisions, kGradingRatio);
}

}  // namespace jlt
