#include "jlt/random.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <numeric>
#include <vector>

#include "jlt/errors.hpp"

namespace jlt {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::at(std::uint64_t i) const { return splitmix64_mix(key_ + (i + 1) * kGolden); }

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Index CounterRng::uniform_int(Index lo, Index hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  const auto k = static_cast<Index>(std::floor(uniform() * span));
  return lo + std::min(k, hi - lo);
}

void RandomModel::validate() const {
  if (b_sites_min < 0 || b_sites_min > b_sites_max || a_bonds_min < 0 || a_bonds_min > a_bonds_max) {
    throw PreconditionError("random model: empty count range");
  }
  if (site_lo >= site_hi || b_sites_max > site_hi - site_lo + 1 || a_bonds_max > site_hi - site_lo) {
    throw PreconditionError("random model: site range too small for the requested counts");
  }
  if (!std::isfinite(b_magnitude) || !std::isfinite(a_low) || !std::isfinite(a_high) || a_low > a_high ||
      b_magnitude < 0.0) {
    throw PreconditionError("random model: invalid value bounds");
  }
}

RandomModel subunit_model(std::uint64_t seed) {
  RandomModel m;
  m.seed = seed;
  m.a_high = 1.0;
  m.allow_negative_b = false;
  return m;
}

namespace {

std::vector<Index> draw_positions(CounterRng& rng, Index count, Index lo, Index hi) {
  const bool scattered = rng.uniform() < 0.5;
  std::vector<Index> out;
  if (count == 0) return out;
  if (!scattered) {
    const Index start = rng.uniform_int(lo, hi - count + 1);
    for (Index i = 0; i < count; ++i) out.push_back(start + i);
    return out;
  }
  // partial Fisher-Yates over [lo, hi]
  std::vector<Index> pool(static_cast<std::size_t>(hi - lo + 1));
  std::iota(pool.begin(), pool.end(), lo);
  const auto n = static_cast<Index>(pool.size());
  for (Index i = 0; i < count; ++i) {
    const Index j = rng.uniform_int(i, n - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  out.assign(pool.begin(), pool.begin() + count);
  std::sort(out.begin(), out.end());
  return out;
}

// Dense window [first, last] from sparse entries, `fill` elsewhere.
std::pair<Index, std::vector<double>> window(const std::map<Index, double>& entries, double fill) {
  if (entries.empty()) return {0, {}};
  const Index first = entries.begin()->first;
  const Index last = entries.rbegin()->first;
  std::vector<double> v(static_cast<std::size_t>(last - first + 1), fill);
  for (const auto& [n, x] : entries) v[static_cast<std::size_t>(n - first)] = x;
  return {first, std::move(v)};
}

}  // namespace

Perturbation random_instance(const RandomModel& model, std::uint64_t index) {
  model.validate();
  CounterRng rng(CounterRng(model.seed).at(index));

  std::map<Index, double> b;
  const Index nb = rng.uniform_int(model.b_sites_min, model.b_sites_max);
  for (Index n : draw_positions(rng, nb, model.site_lo, model.site_hi)) {
    const double u = rng.uniform();
    b[n] = model.allow_negative_b ? model.b_magnitude * (2.0 * u - 1.0) : model.b_magnitude * (1.0 - u);
  }

  std::map<Index, double> a;
  const Index na = rng.uniform_int(model.a_bonds_min, model.a_bonds_max);
  for (Index n : draw_positions(rng, na, model.site_lo, model.site_hi - 1)) {
    a[n] = model.a_low + (model.a_high - model.a_low) * rng.uniform();
  }

  auto [a_off, a_vals] = window(a, 1.0);
  auto [b_off, b_vals] = window(b, 0.0);
  return make_perturbation(a_off, std::move(a_vals), b_off, std::move(b_vals));
}

std::string random_instance_id(std::uint64_t seed, std::uint64_t index) {
  return fmt::format("r{}-{:04}", seed, index);
}

}  // namespace jlt
