#include "jlt/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace jlt {

// ---------------------------------------------------------------------------
// DenseSymmetric

DenseSymmetric DenseSymmetric::identity(std::size_t dim) {
  DenseSymmetric m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

DenseSymmetric DenseSymmetric::diagonal(std::span<const double> d) {
  DenseSymmetric m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

DenseSymmetric DenseSymmetric::from_tridiagonal(const TruncatedTridiagonal& t) {
  DenseSymmetric m(t.dim());
  for (std::size_t i = 0; i < t.dim(); ++i) m.set(i, i, t.diag[i]);
  for (std::size_t i = 0; i < t.offdiag.size(); ++i) m.set(i, i + 1, t.offdiag[i]);
  return m;
}

double DenseSymmetric::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double DenseSymmetric::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double DenseSymmetric::max_abs_diff(const DenseSymmetric& o) const {
  if (o.dim_ != dim_) throw PreconditionError("dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - o.data_[i]));
  return m;
}

DenseSymmetric DenseSymmetric::conjugated(std::span<const int> signs) const {
  if (signs.size() != dim_) throw PreconditionError("sign vector has wrong length");
  DenseSymmetric out(*this);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (signs[i] * signs[j] < 0) out.data_[i * dim_ + j] = -data_[i * dim_ + j];
    }
  }
  return out;
}

DenseSymmetric& DenseSymmetric::operator+=(const DenseSymmetric& o) {
  if (o.dim_ != dim_) throw PreconditionError("dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

DenseSymmetric& DenseSymmetric::operator-=(const DenseSymmetric& o) {
  if (o.dim_ != dim_) throw PreconditionError("dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

DenseSymmetric& DenseSymmetric::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

void EigenConfig::validate() const {
  if (!(edge_buffer > 0 && bisect_tol > 0 && max_half_width > 0 && dense_tol > 0)) {
    throw PreconditionError("eigen configuration values must be positive");
  }
  if (!(bisect_tol < edge_buffer)) throw PreconditionError("bisect_tol must be below edge_buffer");
}

// ---------------------------------------------------------------------------
// Tridiagonal bisection

std::size_t sturm_count(const TruncatedTridiagonal& t, double x) {
  const std::size_t n = t.dim();
  double scale = 1.0;
  for (double e : t.offdiag) scale = std::max(scale, std::abs(e));
  for (double d : t.diag) scale = std::max(scale, std::abs(d));
  const double tiny = 1e-300 * scale;

  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    d = (t.diag[k] - x) - (k == 0 ? 0.0 : t.offdiag[k - 1] * t.offdiag[k - 1] / d);
    // An exact zero pivot means x is an eigenvalue of the leading block; it
    // is not strictly below x, hence the positive replacement.
    if (std::abs(d) < tiny) d = d < 0.0 ? -tiny : tiny;
    if (d < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const TruncatedTridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(t.offdiag[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

namespace {

void bisect_interval(const TruncatedTridiagonal& t, double lo, double hi, std::size_t count_lo,
                     std::size_t count_hi, std::vector<double>& out) {
  if (count_hi <= count_lo) return;
  const double mid = lo + 0.5 * (hi - lo);
  const double resolution = 4.0 * std::numeric_limits<double>::epsilon() *
                            std::max(std::abs(lo), std::abs(hi));
  if (mid <= lo || mid >= hi || hi - lo <= resolution) {
    out.insert(out.end(), count_hi - count_lo, mid);
    return;
  }
  const std::size_t count_mid = std::clamp(sturm_count(t, mid), count_lo, count_hi);
  bisect_interval(t, lo, mid, count_lo, count_mid, out);
  bisect_interval(t, mid, hi, count_mid, count_hi, out);
}

}  // namespace

std::vector<double> bisect_eigenvalues(const TruncatedTridiagonal& t, double lo, double hi) {
  std::vector<double> out;
  if (!(lo < hi)) return out;
  bisect_interval(t, lo, hi, sturm_count(t, lo), sturm_count(t, hi), out);
  return out;
}

SpectrumOutside eigenvalues_outside_fixed(const Perturbation& p, Index half_width,
                                          const EigenConfig& cfg) {
  const TruncatedTridiagonal t = truncate(p, half_width);
  const auto [g_lo, g_hi] = gershgorin_bounds(t);
  const double edge = 2.0 + cfg.edge_buffer;

  SpectrumOutside s;
  s.n_used = half_width;
  s.edge_buffer = cfg.edge_buffer;
  if (g_hi > edge) {
    s.e_plus = bisect_eigenvalues(t, edge, g_hi + 1.0);
    std::reverse(s.e_plus.begin(), s.e_plus.end());
  }
  if (g_lo < -edge) s.e_minus = bisect_eigenvalues(t, g_lo - 1.0, -edge);
  return s;
}

std::size_t count_beyond(const Perturbation& p, double x) {
  if (!(std::abs(x) > 2.0)) throw PreconditionError("count_beyond needs |x| > 2");
  // Eliminating the free exterior leaves the section with g(x) added or
  // subtracted at both ends, where g = 1/(|x| - g) is the half-line Green's
  // function. The exterior block is definite, so inertia passes through.
  TruncatedTridiagonal t = truncate(p, min_half_width(p));
  const double ax = std::abs(x);
  const double g = 2.0 / (ax + std::sqrt((ax - 2.0) * (ax + 2.0)));
  const double shift = x > 0.0 ? g : -g;
  t.diag.front() += shift;
  t.diag.back() += shift;
  if (x < 0.0) return sturm_count(t, x);
  // Eigenvalues strictly above x: total minus those at or below x.
  return t.dim() - sturm_count(t, std::nextafter(x, std::numeric_limits<double>::infinity()));
}

namespace {

// Largest eigenvalue movement between two sections, or +inf when the counts differ.
double movement(const SpectrumOutside& a, const SpectrumOutside& b) {
  if (a.e_plus.size() != b.e_plus.size() || a.e_minus.size() != b.e_minus.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.e_plus.size(); ++i) m = std::max(m, std::abs(a.e_plus[i] - b.e_plus[i]));
  for (std::size_t i = 0; i < a.e_minus.size(); ++i) m = std::max(m, std::abs(a.e_minus[i] - b.e_minus[i]));
  return m;
}

}  // namespace

SpectrumOutside eigenvalues_outside(const Perturbation& p, const EigenConfig& cfg) {
  cfg.validate();
  const Index needed = min_half_width(p);
  if (needed > cfg.max_half_width) {
    throw PreconditionError("support does not fit in max_half_width");
  }
  // A section only sees a bound state once it spans a few decay lengths, so
  // two small sections can agree on an empty spectrum. The exact counts keep
  // the doubling going until every eigenvalue has appeared.
  const double edge = 2.0 + cfg.edge_buffer;
  const std::size_t want_plus = count_beyond(p, edge);
  const std::size_t want_minus = count_beyond(p, -edge);
  const auto complete = [&](const SpectrumOutside& s) {
    return s.e_plus.size() == want_plus && s.e_minus.size() == want_minus;
  };

  Index hw = std::min(needed + 32, cfg.max_half_width);
  SpectrumOutside prev = eigenvalues_outside_fixed(p, hw, cfg);
  prev.est_error = std::numeric_limits<double>::infinity();
  while (hw < cfg.max_half_width) {
    hw = std::min(2 * hw, cfg.max_half_width);
    SpectrumOutside cur = eigenvalues_outside_fixed(p, hw, cfg);
    cur.est_error = movement(prev, cur);
    if (cur.est_error < cfg.bisect_tol && complete(cur)) return cur;
    prev = std::move(cur);
  }
  throw ConvergenceError("eigenvalues did not settle by half-width " +
                             std::to_string(cfg.max_half_width),
                         std::move(prev));
}

// ---------------------------------------------------------------------------
// Dense symmetric eigensolver

DenseEigen dense_eigen(const DenseSymmetric& m, const EigenConfig& cfg) {
  constexpr int kMaxSweeps = 100;
  const std::size_t n = m.dim();
  if (n == 0) throw PreconditionError("dense eigensolver needs dim >= 1");

  std::vector<double> a(n * n);
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    v[i * n + i] = 1.0;
  }
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  const double threshold = cfg.dense_tol * m.frobenius_norm();
  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
    }
    if (std::sqrt(off) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) throw NumericalError("Jacobi eigensolver did not converge");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return at(x, x) < at(y, y); });
  DenseEigen out;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = at(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = v[i * n + order[k]];
  }
  return out;
}

std::vector<double> dense_eigenvalues(const DenseSymmetric& m, const EigenConfig& cfg) {
  return dense_eigen(m, cfg).values;
}

namespace {

void check_rank(const DenseSymmetric& m, std::size_t n) {
  if (n == 0 || n > m.dim()) {
    throw PreconditionError("n = " + std::to_string(n) + " outside [1, " + std::to_string(m.dim()) + "]");
  }
}

}  // namespace

double kyfan(const DenseSymmetric& m, std::size_t n, const EigenConfig& cfg) {
  check_rank(m, n);
  std::vector<double> ev = dense_eigenvalues(m, cfg);
  for (double& x : ev) x = std::abs(x);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += ev[i];
  return s;
}

double eigenvalue_sum_top(const DenseSymmetric& m, std::size_t n, const EigenConfig& cfg) {
  check_rank(m, n);
  const std::vector<double> ev = dense_eigenvalues(m, cfg);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += ev[ev.size() - 1 - i];
  return s;
}

}  // namespace jlt
