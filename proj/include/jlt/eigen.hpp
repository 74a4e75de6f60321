#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jlt/core.hpp"
#include "jlt/errors.hpp"

namespace jlt {

/// Small dense symmetric matrix, row-major. Writes go through set(), which
/// updates both triangles, so the matrix is exactly symmetric.
class DenseSymmetric {
 public:
  DenseSymmetric() = default;
  explicit DenseSymmetric(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  static DenseSymmetric identity(std::size_t dim);
  static DenseSymmetric diagonal(std::span<const double> d);
  /// Full section of a tridiagonal matrix.
  static DenseSymmetric from_tridiagonal(const TruncatedTridiagonal& t);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * dim_ + j] = v;
    data_[j * dim_ + i] = v;
  }

  [[nodiscard]] double trace() const;
  [[nodiscard]] double frobenius_norm() const;
  [[nodiscard]] double max_abs_diff(const DenseSymmetric& o) const;

  /// S M S for the diagonal sign matrix S = diag(signs).
  [[nodiscard]] DenseSymmetric conjugated(std::span<const int> signs) const;

  DenseSymmetric& operator+=(const DenseSymmetric& o);
  DenseSymmetric& operator-=(const DenseSymmetric& o);
  DenseSymmetric& operator*=(double s);
  friend DenseSymmetric operator+(DenseSymmetric a, const DenseSymmetric& b) { return a += b; }
  friend DenseSymmetric operator-(DenseSymmetric a, const DenseSymmetric& b) { return a -= b; }
  friend DenseSymmetric operator*(double s, DenseSymmetric a) { return a *= s; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

struct EigenConfig {
  double edge_buffer = 1e-7;
  double bisect_tol = 1e-11;
  Index max_half_width = Index{1} << 14;
  /// Relative off-diagonal Frobenius norm at which Jacobi sweeps stop.
  double dense_tol = 1e-12;

  /// Throws PreconditionError unless all fields are positive and
  /// bisect_tol < edge_buffer.
  void validate() const;
};

/// Discrete eigenvalues of J outside the essential spectrum [-2, 2].
struct SpectrumOutside {
  std::vector<double> e_plus;   ///< descending, every entry > 2 + edge_buffer
  std::vector<double> e_minus;  ///< ascending, every entry < -(2 + edge_buffer)
  Index n_used = 0;             ///< truncation half-width of the final section
  double est_error = 0.0;       ///< largest movement over the last doubling
  double edge_buffer = 0.0;
};

/// Thrown when the truncation reaches max_half_width without the eigenvalues
/// settling; carries the last computed spectrum.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, SpectrumOutside partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  [[nodiscard]] const SpectrumOutside& partial() const { return partial_; }

 private:
  SpectrumOutside partial_;
};

/// Number of eigenvalues of t strictly below x (LDL^T inertia).
std::size_t sturm_count(const TruncatedTridiagonal& t, double x);

/// Gershgorin enclosure [lo, hi] of the spectrum of t.
std::pair<double, double> gershgorin_bounds(const TruncatedTridiagonal& t);

/// Eigenvalues of t lying in [lo, hi), ascending, each
/// bisected to machine resolution.
std::vector<double> bisect_eigenvalues(const TruncatedTridiagonal& t, double lo, double hi);

/// Exact number of eigenvalues of the infinite operator above x (x > 2) or
/// below x (x < -2), from a section with the free exterior eliminated.
std::size_t count_beyond(const Perturbation& p, double x);

/// E_j^+ and E_j^- of J with adaptive truncation: the half-width doubles
/// (the last step is clamped to max_half_width) until the eigenvalue count is
/// stable, matches count_beyond, and no eigenvalue moves by bisect_tol or more.
SpectrumOutside eigenvalues_outside(const Perturbation& p, const EigenConfig& cfg = {});

/// Spectrum of one fixed section, without the convergence loop.
SpectrumOutside eigenvalues_outside_fixed(const Perturbation& p, Index half_width,
                                          const EigenConfig& cfg = {});

struct DenseEigen {
  std::vector<double> values;  ///< ascending
  /// Column k (vectors[i * dim + k]) is the unit eigenvector for values[k].
  std::vector<double> vectors;
};

/// Cyclic Jacobi rotations. Throws NumericalError if the sweep cap is hit.
DenseEigen dense_eigen(const DenseSymmetric& m, const EigenConfig& cfg = {});
std::vector<double> dense_eigenvalues(const DenseSymmetric& m, const EigenConfig& cfg = {});

/// Sum of the n largest singular values (n largest |eigenvalues|).
double kyfan(const DenseSymmetric& m, std::size_t n, const EigenConfig& cfg = {});

/// Sum of the n largest signed eigenvalues.
double eigenvalue_sum_top(const DenseSymmetric& m, std::size_t n, const EigenConfig& cfg = {});

/// f(M) = V f(Lambda) V^T through the eigendecomposition.
template <class F>
DenseSymmetric spectral_apply(const DenseSymmetric& m, F&& f, const EigenConfig& cfg = {}) {
  const DenseEigen e = dense_eigen(m, cfg);
  const std::size_t n = m.dim();
  std::vector<double> fv(n);
  for (std::size_t k = 0; k < n; ++k) fv[k] = f(e.values[k]);
  DenseSymmetric out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += e.vectors[i * n + k] * fv[k] * e.vectors[j * n + k];
      out.set(i, j, s);
    }
  }
  return out;
}

}  // namespace jlt
