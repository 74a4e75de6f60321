#pragma once

// Reproducible instance generation.
//
// CounterRng is a keyed counter-based generator: draw i of key k is
//   splitmix64_mix(k + (i + 1) * 0x9E3779B97F4A7C15)
// with splitmix64_mix(z):
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
// (all arithmetic mod 2^64). Instance i of seed s uses the key
// CounterRng(s).at(i). uniform() is (draw >> 11) * 2^-53 and
// uniform_int(lo, hi) is lo + floor(uniform() * (hi - lo + 1)).

#include <cstdint>
#include <string>

#include "jlt/core.hpp"

namespace jlt {

std::uint64_t splitmix64_mix(std::uint64_t z);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  /// Draw number i, independent of the stream position.
  [[nodiscard]] std::uint64_t at(std::uint64_t i) const;

  std::uint64_t next() { return at(counter_++); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [lo, hi]; requires lo <= hi.
  Index uniform_int(Index lo, Index hi);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Distribution of random instances. Sites (and bond left ends) are drawn
/// from [site_lo, site_hi] (bonds from [site_lo, site_hi - 1]), either as a
/// contiguous block or scattered, with probability 1/2 each.
struct RandomModel {
  std::uint64_t seed = 1;
  Index b_sites_min = 1;
  Index b_sites_max = 9;
  double b_magnitude = 2.0;
  Index a_bonds_min = 0;
  Index a_bonds_max = 8;
  double a_low = 0.0;
  double a_high = 2.0;
  bool allow_negative_b = true;
  Index site_lo = -10;
  Index site_hi = 10;

  /// Throws PreconditionError for empty ranges or non-finite bounds.
  void validate() const;
};

/// b >= 0 (strictly positive on the drawn sites) and 0 <= a <= 1.
RandomModel subunit_model(std::uint64_t seed);

/// Draw instance `index` of the model. Generation order per instance:
/// b-site count, layout coin, positions, values (increasing position), then
/// the same four steps for bonds. b values are b_magnitude * (2u - 1) when
/// negative values are allowed, else b_magnitude * (1 - u).
Perturbation random_instance(const RandomModel& model, std::uint64_t index);

/// "r<seed>-<index, zero-padded to 4>"
std::string random_instance_id(std::uint64_t seed, std::uint64_t index);

}  // namespace jlt
