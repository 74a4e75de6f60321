#pragma once

// Jacobi operators J = W({a_n},{b_n}) on l^2(Z) that differ from the free
// operator (a == 1, b == 0) on finitely many entries.
//
// Index conventions: b_n sits on site n; a_n is the bond between sites n and
// n+1, i.e. the matrix entries J(n,n+1) = J(n+1,n) = a_n.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace jlt {

using Index = std::int64_t;

/// Upper bound on bonds with a_n < 1 in one instance; the sign-pattern
/// decomposition enumerates 2^m terms.
inline constexpr std::size_t kMaxSubunitBonds = 20;

/// Inclusive range of lattice sites.
struct SiteRange {
  Index lo = 0;
  Index hi = -1;

  [[nodiscard]] bool empty() const { return hi < lo; }
  [[nodiscard]] Index size() const { return empty() ? 0 : hi - lo + 1; }
};

class Perturbation {
 public:
  /// Free operator.
  Perturbation() = default;

  [[nodiscard]] Index a_offset() const { return a_offset_; }
  [[nodiscard]] Index b_offset() const { return b_offset_; }
  [[nodiscard]] std::span<const double> a() const { return a_; }
  [[nodiscard]] std::span<const double> b() const { return b_; }

  /// a_n with the implicit value 1 outside the stored window.
  [[nodiscard]] double a_at(Index n) const;
  /// b_n with the implicit value 0 outside the stored window.
  [[nodiscard]] double b_at(Index n) const;

  [[nodiscard]] bool is_free() const { return a_.empty() && b_.empty(); }

  /// Bond indices of the stored a-window (may be empty).
  [[nodiscard]] SiteRange bond_range() const;
  /// Smallest site range touched by either window. A bond n touches sites
  /// n and n+1.
  [[nodiscard]] SiteRange support() const;

  /// max |site| over the support, or -1 for the free operator.
  [[nodiscard]] Index support_extent() const;

  friend bool operator==(const Perturbation&, const Perturbation&) = default;

 private:
  friend Perturbation make_perturbation(Index, std::vector<double>, Index, std::vector<double>);

  Index a_offset_ = 0;
  std::vector<double> a_;
  Index b_offset_ = 0;
  std::vector<double> b_;
};

/// Validates and canonicalizes: leading/trailing a == 1 and b == 0 are
/// trimmed, empty windows get offset 0.
/// Throws ValidationError on non-finite entries or more than
/// kMaxSubunitBonds bonds with a_n < 1.
Perturbation make_perturbation(Index a_offset, std::vector<double> a, Index b_offset,
                               std::vector<double> b);

/// Finite symmetric tridiagonal section; row i is lattice site lo + i and
/// offdiag[i] couples rows i and i+1.
struct TruncatedTridiagonal {
  Index lo = 0;
  std::vector<double> diag;
  std::vector<double> offdiag;

  TruncatedTridiagonal() = default;
  /// Throws ValidationError unless offdiag.size() + 1 == diag.size() and all
  /// entries are finite.
  TruncatedTridiagonal(Index lo, std::vector<double> diag, std::vector<double> offdiag);

  [[nodiscard]] std::size_t dim() const { return diag.size(); }
  [[nodiscard]] Index hi() const { return lo + static_cast<Index>(diag.size()) - 1; }
};

/// Smallest half-width whose section [-N, N] contains the support with one
/// free site to spare on each side.
Index min_half_width(const Perturbation& p);

/// Section of J on sites [-half_width, half_width]. Throws PreconditionError
/// if half_width < min_half_width(p).
TruncatedTridiagonal truncate(const Perturbation& p, Index half_width);

/// Same section with the diagonal zeroed (off-diagonal part A only).
TruncatedTridiagonal truncate_offdiagonal(const Perturbation& p, Index half_width);

/// W({a_n},{-b_n}); unitarily equivalent to -W({a_n},{b_n}).
Perturbation negate_b(const Perturbation& p);

struct SandwichPair {
  Perturbation minus;  ///< lower comparison operator
  Perturbation plus;   ///< upper comparison operator
};

/// Comparison operators with a~_n = min(a_n, 1) and
///   b~+_n =  [b_n]_+ + (a_{n-1}-1)_+ + (a_n-1)_+
///   b~-_n = -[b_n]_- - (a_{n-1}-1)_+ - (a_n-1)_+
/// bracketing J in the semidefinite order.
SandwichPair sandwich(const Perturbation& p);

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }
inline double negative_part(double x) { return x < 0.0 ? -x : 0.0; }

}  // namespace jlt
