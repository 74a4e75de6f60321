#include "jlt/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jlt/errors.hpp"

namespace jlt {

namespace {

void check_finite(const std::vector<double>& v, Index offset, const char* name) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw ValidationError(std::string("non-finite ") + name + " entry at index " +
                            std::to_string(offset + static_cast<Index>(i)));
    }
  }
}

// Drops leading/trailing entries equal to `neutral`, shifting offset.
void trim(Index& offset, std::vector<double>& v, double neutral) {
  auto first = std::find_if(v.begin(), v.end(), [&](double x) { return x != neutral; });
  if (first == v.end()) {
    v.clear();
    offset = 0;
    return;
  }
  auto last = std::find_if(v.rbegin(), v.rend(), [&](double x) { return x != neutral; }).base();
  offset += first - v.begin();
  v = std::vector<double>(first, last);
}

}  // namespace

double Perturbation::a_at(Index n) const {
  const Index i = n - a_offset_;
  if (i < 0 || i >= static_cast<Index>(a_.size())) return 1.0;
  return a_[static_cast<std::size_t>(i)];
}

double Perturbation::b_at(Index n) const {
  const Index i = n - b_offset_;
  if (i < 0 || i >= static_cast<Index>(b_.size())) return 0.0;
  return b_[static_cast<std::size_t>(i)];
}

SiteRange Perturbation::bond_range() const {
  if (a_.empty()) return {};
  return {a_offset_, a_offset_ + static_cast<Index>(a_.size()) - 1};
}

SiteRange Perturbation::support() const {
  SiteRange r;
  if (!b_.empty()) r = {b_offset_, b_offset_ + static_cast<Index>(b_.size()) - 1};
  if (!a_.empty()) {
    const SiteRange bonds = bond_range();
    if (r.empty()) {
      r = {bonds.lo, bonds.hi + 1};
    } else {
      r.lo = std::min(r.lo, bonds.lo);
      r.hi = std::max(r.hi, bonds.hi + 1);
    }
  }
  return r;
}

Index Perturbation::support_extent() const {
  const SiteRange s = support();
  if (s.empty()) return -1;
  return std::max(std::abs(s.lo), std::abs(s.hi));
}

Perturbation make_perturbation(Index a_offset, std::vector<double> a, Index b_offset,
                               std::vector<double> b) {
  check_finite(a, a_offset, "a");
  check_finite(b, b_offset, "b");
  // -0.0 -> +0.0 so stored values compare and print canonically
  for (double& x : a) x += 0.0;
  for (double& x : b) x += 0.0;
  trim(a_offset, a, 1.0);
  trim(b_offset, b, 0.0);
  const auto subunit = std::count_if(a.begin(), a.end(), [](double x) { return x < 1.0; });
  if (static_cast<std::size_t>(subunit) > kMaxSubunitBonds) {
    throw ValidationError("instance has " + std::to_string(subunit) +
                          " bonds with a_n < 1; the limit is " +
                          std::to_string(kMaxSubunitBonds));
  }
  Perturbation p;
  p.a_offset_ = a_offset;
  p.a_ = std::move(a);
  p.b_offset_ = b_offset;
  p.b_ = std::move(b);
  return p;
}

TruncatedTridiagonal::TruncatedTridiagonal(Index lo_, std::vector<double> diag_,
                                           std::vector<double> offdiag_)
    : lo(lo_), diag(std::move(diag_)), offdiag(std::move(offdiag_)) {
  if (diag.empty() || offdiag.size() + 1 != diag.size()) {
    throw ValidationError("tridiagonal section needs len(offdiag) == len(diag) - 1 >= 0");
  }
  for (double x : diag) {
    if (!std::isfinite(x)) throw ValidationError("non-finite diagonal entry");
  }
  for (double x : offdiag) {
    if (!std::isfinite(x)) throw ValidationError("non-finite off-diagonal entry");
  }
}

Index min_half_width(const Perturbation& p) { return std::max<Index>(1, p.support_extent() + 1); }

TruncatedTridiagonal truncate(const Perturbation& p, Index half_width) {
  if (half_width < min_half_width(p)) {
    throw PreconditionError("half-width " + std::to_string(half_width) +
                            " does not cover the support (need >= " +
                            std::to_string(min_half_width(p)) + ")");
  }
  const auto dim = static_cast<std::size_t>(2 * half_width + 1);
  std::vector<double> diag(dim);
  std::vector<double> off(dim - 1);
  for (std::size_t i = 0; i < dim; ++i) {
    const Index n = -half_width + static_cast<Index>(i);
    diag[i] = p.b_at(n);
    if (i + 1 < dim) off[i] = p.a_at(n);
  }
  return {-half_width, std::move(diag), std::move(off)};
}

TruncatedTridiagonal truncate_offdiagonal(const Perturbation& p, Index half_width) {
  TruncatedTridiagonal t = truncate(p, half_width);
  std::fill(t.diag.begin(), t.diag.end(), 0.0);
  return t;
}

Perturbation negate_b(const Perturbation& p) {
  std::vector<double> b(p.b().begin(), p.b().end());
  for (double& x : b) x = -x;
  return make_perturbation(p.a_offset(), {p.a().begin(), p.a().end()}, p.b_offset(),
                           std::move(b));
}

SandwichPair sandwich(const Perturbation& p) {
  const SiteRange s = p.support();
  if (s.empty()) return {p, p};

  std::vector<double> a(p.a().begin(), p.a().end());
  for (double& x : a) x = std::min(x, 1.0);

  std::vector<double> plus(static_cast<std::size_t>(s.size()));
  std::vector<double> minus(plus.size());
  for (Index n = s.lo; n <= s.hi; ++n) {
    const double excess = positive_part(p.a_at(n - 1) - 1.0) + positive_part(p.a_at(n) - 1.0);
    const double b = p.b_at(n);
    const auto i = static_cast<std::size_t>(n - s.lo);
    plus[i] = positive_part(b) + excess;
    minus[i] = -negative_part(b) - excess;
  }
  return {make_perturbation(p.a_offset(), a, s.lo, std::move(minus)),
          make_perturbation(p.a_offset(), std::move(a), s.lo, std::move(plus))};
}

}  // namespace jlt
