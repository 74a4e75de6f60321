#pragma once

// Scalar functionals of the discrete spectrum and of the perturbation:
// eigenvalue sums, Riesz means, Beta function, and the F/G functions of the
// Killip-Simon type bound.

#include <cstddef>
#include <utility>

#include "jlt/core.hpp"
#include "jlt/eigen.hpp"

namespace jlt {

enum class Sign { plus, minus };

struct RieszConfig {
  std::size_t quad_points = 64;
  std::size_t subdivisions = 8;
  double gamma = 1.5;

  /// Throws PreconditionError unless gamma > 1/2, quad_points >= 8 and
  /// subdivisions >= 1.
  void validate() const;
};

/// |e| = beta = mu + 1/mu with 0 < mu < 1.
struct EdgeParam {
  double e = 0.0;
  double mu = 0.0;
  double beta = 0.0;
};

/// Throws DomainError for |e| <= 2.
EdgeParam mu_of_E(double e);

/// sum_j sqrt(E_j^2 - 4) over both lists.
double lt_lhs_main(const SpectrumOutside& s);

/// sum_n |b_n| + 4 sum_n (a_n - 1)_+
double rhs_main(const Perturbation& p);
/// sum_n |b_n| + 4 sum_n |a_n - 1|
double rhs_hs(const Perturbation& p);

/// F(E) = beta^2 - beta^-2 - log beta^2 with E = beta + 1/beta, |beta| > 1.
double ks_F(double e);
/// G(a) = a^2 - 1 - log a^2.
double ks_G(double a);

/// Euler Beta function; throws DomainError unless x, y > 0.
double beta_fn(double x, double y);

/// int_2^|e| (t^2 - 4)^{1/2} (|e| - t)^{gamma - 3/2} dt.
double riesz_mean(double e, const RieszConfig& cfg);

/// Sum of riesz_mean over e_plus (Sign::plus) or e_minus (Sign::minus).
double riesz_lhs(const SpectrumOutside& s, Sign sign, const RieszConfig& cfg);

/// B(gamma - 1/2, 2) sum_n ([b_n]_± + (a_n - 1)_+ + (a_{n-1} - 1)_+)^{gamma + 1/2}.
/// Throws PreconditionError if some a_n < 0.
double riesz_rhs(const Perturbation& p, double gamma, Sign sign);

/// (2 B(gamma-1/2, 3/2) (|e|-2)^gamma, B(gamma-1/2, 2) (|e|-2)^{gamma+1/2}),
/// both lower bounds for riesz_mean(e, gamma).
std::pair<double, double> remark_lower_bounds(double e, double gamma);

/// int_0^inf (c - s)_+ s^{gamma - 3/2} ds by quadrature, for checking the
/// layer-cake identity against B(gamma - 1/2, 2) c^{gamma + 1/2}.
double layer_cake_integral(double c, const RieszConfig& cfg);

}  // namespace jlt
