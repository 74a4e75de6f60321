#pragma once

#include <cstddef>
#include <vector>

namespace jlt {

/// n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(std::size_t n);

  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

  /// Integral of f over [a, b].
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(mid + half * nodes_[i]);
    return half * s;
  }

  /// `panels` equal panels on [a, b].
  template <class F>
  double integrate_panels(F&& f, double a, double b, std::size_t panels) const {
    const double h = (b - a) / static_cast<double>(panels);
    double s = 0.0;
    for (std::size_t k = 0; k < panels; ++k) {
      const double lo = a + h * static_cast<double>(k);
      const double hi = k + 1 == panels ? b : lo + h;
      s += integrate(f, lo, hi);
    }
    return s;
  }

  /// Panels shrinking geometrically (by `ratio`) toward the endpoint a, for
  /// integrands with an algebraic singularity there.
  template <class F>
  double integrate_graded(F&& f, double a, double b, std::size_t panels, double ratio) const {
    double s = 0.0;
    double hi = b;
    for (std::size_t k = 0; k + 1 < panels; ++k) {
      const double lo = a + (hi - a) * ratio;
      s += integrate(f, lo, hi);
      hi = lo;
    }
    return s + integrate(f, a, hi);
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace jlt
