#pragma once

// Verification drivers shared by the CLI and the acceptance tests.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jlt/core.hpp"
#include "jlt/eigen.hpp"
#include "jlt/functionals.hpp"
#include "jlt/report.hpp"

namespace jlt {

inline constexpr double kDefaultMarginTol = 1e-7;

struct VerifyOptions {
  std::vector<double> gammas{0.75, 1.0, 1.5, 2.5};
  double tol = kDefaultMarginTol;
  EigenConfig eigen;
  RieszConfig riesz;  ///< gamma field is overwritten per entry of `gammas`
  bool eq3 = true;
};

struct InstanceVerification {
  SpectrumOutside spectrum;
  std::vector<VerificationReport> reports;
  /// Riesz-mean rows are omitted for instances with some a_n < 0.
  bool eq4_skipped = false;
};

/// eq1, eq2, eq4_plus/eq4_minus per gamma, and the two eq3_report rows.
/// Propagates ConvergenceError from the eigensolver.
InstanceVerification verify_instance(const Perturbation& p, const std::string& id,
                                     const VerifyOptions& opts);

/// Both eq3_report rows for a computed spectrum.
std::vector<VerificationReport> eq3_reports(const Perturbation& p, const SpectrumOutside& s,
                                            const std::string& id, const RieszConfig& riesz);

struct SweepRow {
  std::string instance_id;
  double gamma = 0.0;
  Sign sign = Sign::plus;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double remark_bound_1 = 0.0;  ///< sum_j 2 B(gamma-1/2, 3/2) (|E_j|-2)^gamma
  double remark_bound_2 = 0.0;  ///< sum_j B(gamma-1/2, 2) (|E_j|-2)^{gamma+1/2}
  bool remark_ok = true;        ///< each eigenvalue's bounds <= its Riesz mean (+ tol)
  bool pass = true;
};

inline constexpr std::string_view kSweepCsvHeader =
    "instance_id,gamma,sign,lhs,rhs,margin,remark_bound_1,remark_bound_2,remark_ok,pass";

/// Throws PreconditionError if some gamma <= 1/2 or some a_n < 0.
std::vector<SweepRow> sweep_instance(const Perturbation& p, const std::string& id,
                                     const std::vector<double>& gammas, double tol,
                                     const EigenConfig& eigen = {}, const RieszConfig& riesz = {});

struct SharpnessRow {
  double param = 0.0;  ///< a (bond mode) or b (site mode)
  double lhs = 0.0;    ///< sum sqrt(E^2 - 4) from the eigensolver
  double rhs = 0.0;    ///< rhs_main
  double ratio = 0.0;  ///< lhs / rhs
  double ratio_closed_form = 0.0;
  std::vector<double> e_plus;
  std::vector<double> e_minus;
  Index n_used = 0;
  double est_error = 0.0;
};

inline constexpr std::string_view kSharpnessCsvHeader =
    "param,lhs,rhs,ratio,ratio_closed_form,e_top,e_bottom,n_used,est_error";

/// Single bond a_0 = a > 1 on the free background; closed form ratio (a+1)/(2a).
SharpnessRow sharpness_bond(double a, const EigenConfig& cfg = {});
/// Single site b_0 = b != 0; closed form ratio 1.
SharpnessRow sharpness_site(double b, const EigenConfig& cfg = {});

/// Outcome of one property suite.
struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst = 0.0;  ///< largest tolerance violation seen (0 when all pass)
  std::vector<std::string> details;

  [[nodiscard]] bool pass() const { return failures == 0 && checks > 0; }
};

/// Every suite takes a base seed; `tol`, when set, replaces the per-check
/// default tolerances.
struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t count = 0;  ///< 0 = suite default
  std::optional<double> tol;
};

/// Sign-pattern decomposition: weights, reconstruction of kappa and of A (1e-12).
SuiteResult suite_decomposition(const SuiteOptions& o);
/// Birman-Schwinger principle (1e-6), kernel agreement (1e-8), domination chain (1e-8).
SuiteResult suite_birman_schwinger(const SuiteOptions& o);
/// S_n monotonicity on {0.1, ..., 0.9, 1.0} (1e-10) and the trace step (1e-10).
SuiteResult suite_smu(const SuiteOptions& o);
/// Ky-Fan averaging over random +-1 conjugators (1e-10).
SuiteResult suite_kyfan(const SuiteOptions& o);
/// Fourier coefficients mu^|n| (1e-10) and the convolution identity (1e-8).
SuiteResult suite_gmu(const SuiteOptions& o);
/// Operator convexity of (beta - X)^{-1} (1e-10).
SuiteResult suite_convexity(const SuiteOptions& o);

inline const std::vector<double> kMuGrid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

}  // namespace jlt
