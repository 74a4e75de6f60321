#pragma once

// Finite-dimensional versions of the operators used in the eigenvalue-sum
// bound: sign-pattern convex decomposition of the off-diagonal part,
// Birman-Schwinger operators K(A; beta) and L_mu(A) = (beta^2 - 4)^{1/2} K,
// their averaged free-kernel majorant, and the density g_mu whose Fourier
// coefficients are mu^|n|.

#include <cstddef>
#include <utility>
#include <vector>

#include "jlt/core.hpp"
#include "jlt/eigen.hpp"

namespace jlt {

struct SignTerm {
  double weight = 0.0;
  std::vector<int> signs;  ///< +1/-1 per entry of SignDecomposition::bond_positions
};

/// A = sum_sigma weight_sigma D_sigma A_1 D_sigma, where A_1 is the free
/// off-diagonal part and D_sigma a +-1 diagonal flipping the bonds with
/// sigma_i = -1.
struct SignDecomposition {
  std::vector<Index> bond_positions;  ///< bonds with a_n < 1, increasing
  std::vector<double> kappa;          ///< a_n at those bonds
  std::vector<SignTerm> terms;

  /// +-1 value of D_sigma at each of `sites` (sign +1 to the left of every
  /// flipped bond).
  [[nodiscard]] std::vector<int> conjugator(const SignTerm& term, std::span<const Index> sites) const;
};

/// Site index and b_n > 0.
using SiteValue = std::pair<Index, double>;

/// Enumerates all 2^m sign patterns with weight prod_i (1 + sigma_i kappa_i) / 2.
/// Throws PreconditionError unless every stored a_n is in [0, 1].
SignDecomposition sign_pattern_decomposition(const Perturbation& p);

/// Per bond, sum_sigma weight_sigma sigma_i; reproduces kappa.
std::vector<double> reconstruct_offdiagonal(const SignDecomposition& d);

/// Sites with b_n > 0, increasing.
std::vector<SiteValue> positive_sites(const Perturbation& p);

/// Half-width for resolvent solves at parameter mu: the smallest N with
/// mu^N < 1e-12, plus the support extent.
Index resolvent_half_width(const Perturbation& p, double mu);

/// B^{1/2} (beta - A)^{-1} B^{1/2} on the sites with b_n > 0, with A the
/// truncated off-diagonal part. Throws PreconditionError for negative b, no
/// positive b, or a section too short for the Green's function decay;
/// NumericalError if beta - A is singular.
DenseSymmetric birman_schwinger(const Perturbation& p, double beta, Index half_width);

/// (beta^2 - 4)^{1/2} K(A; beta) with beta = mu + 1/mu.
DenseSymmetric l_mu(const Perturbation& p, double mu, Index half_width);

/// b_m^{1/2} mu^{|m-n|} b_n^{1/2}. mu = 1 gives the rank-one diagonal limit.
DenseSymmetric l_mu_free_closed_form(std::span<const SiteValue> sites, double mu);

/// sum_sigma weight_sigma D_sigma L_mu(A_1) D_sigma on the given sites.
DenseSymmetric averaged_l_mu(const SignDecomposition& d, std::span<const SiteValue> sites,
                             double mu);

/// S_n(mu), the sum of the n largest eigenvalues of averaged_l_mu, for each
/// mu in (0, 1].
std::vector<double> s_n_curve(const SignDecomposition& d, std::span<const SiteValue> sites,
                              std::size_t n, std::span<const double> mus);

/// Smallest eigenvalue of
///   lam (beta - x1)^{-1} + (1 - lam)(beta - x2)^{-1} - (beta - lam x1 - (1 - lam) x2)^{-1}.
/// Throws PreconditionError unless beta exceeds the top eigenvalue of x1 and x2.
double operator_convexity_gap(const DenseSymmetric& x1, const DenseSymmetric& x2, double beta,
                              double lam);

struct Conjugator {
  double weight = 0.0;
  std::vector<int> signs;
};

/// (||sum_j w_j D_j T D_j||_n, ||T||_n) in the Ky-Fan n-norm.
std::pair<double, double> kyfan_averaging_check(const DenseSymmetric& t,
                                                std::span<const Conjugator> conjugators,
                                                std::size_t n);

class GmuDensity {
 public:
  /// Throws PreconditionError unless 0 < mu < 1.
  explicit GmuDensity(double mu);
  [[nodiscard]] double mu() const { return mu_; }

 private:
  double mu_;
};

/// (2 pi)^{-1/2} (1/mu - mu) / (-2 cos k + 1/mu + mu)
double g_mu_eval(const GmuDensity& g, double k);

/// (2 pi)^{-1/2} int_{-pi}^{pi} e^{ink} g_mu(k) dk by panel quadrature.
double fourier_g(const GmuDensity& g, Index n);

/// ((g_nu / sqrt(2 pi)) * (g_{mu/nu} / sqrt(2 pi)))(k), periodic convolution
/// by panel quadrature; equals g_mu(k) / sqrt(2 pi). Needs 0 < mu < nu < 1.
double g_convolution(double mu, double nu, double k);

}  // namespace jlt
