#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "jlt/core.hpp"
#include "jlt/errors.hpp"
#include "jlt/random.hpp"
#include "oracle.hpp"

using namespace jlt;

namespace {

std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("make_perturbation keeps and trims windows") {
  const Perturbation free = make_perturbation(0, {}, 0, {});
  CHECK(free.is_free());
  CHECK(free.support().empty());

  const Perturbation trimmed = make_perturbation(0, {1.0, 1.0}, 0, {0.0});
  CHECK(trimmed.is_free());
  CHECK(trimmed == free);

  const Perturbation p = make_perturbation(-1, {0.5, 2.0}, 0, {1.5});
  CHECK(p.a_offset() == -1);
  CHECK(vec(p.a()) == std::vector<double>{0.5, 2.0});
  CHECK(p.a_at(-1) == 0.5);
  CHECK(p.a_at(0) == 2.0);
  CHECK(p.a_at(1) == 1.0);
  CHECK(p.b_at(0) == 1.5);
  CHECK(p.b_at(3) == 0.0);
  CHECK(p.support().lo == -1);
  CHECK(p.support().hi == 1);
}

TEST_CASE("make_perturbation trims interior-adjacent ends only") {
  const Perturbation p = make_perturbation(-2, {1.0, 0.5, 1.0, 0.7, 1.0}, 3, {0.0, -0.0, 2.0, 0.0});
  CHECK(p.a_offset() == -1);
  CHECK(vec(p.a()) == std::vector<double>{0.5, 1.0, 0.7});
  CHECK(p.b_offset() == 5);
  CHECK(vec(p.b()) == std::vector<double>{2.0});
}

TEST_CASE("make_perturbation rejects non-finite entries and too many subunit bonds") {
  CHECK_THROWS_AS(make_perturbation(0, {std::nan("")}, 0, {}), ValidationError);
  CHECK_THROWS_AS(make_perturbation(0, {}, 0, {1.0, std::numeric_limits<double>::infinity()}), ValidationError);
  CHECK_NOTHROW(make_perturbation(0, std::vector<double>(kMaxSubunitBonds, 0.5), 0, {}));
  CHECK_THROWS_AS(make_perturbation(0, std::vector<double>(kMaxSubunitBonds + 1, 0.5), 0, {}), ValidationError);
}

TEST_CASE("truncate builds the finite section") {
  const TruncatedTridiagonal f = truncate(Perturbation{}, 1);
  CHECK(f.lo == -1);
  CHECK(f.diag == std::vector<double>{0, 0, 0});
  CHECK(f.offdiag == std::vector<double>{1, 1});

  const TruncatedTridiagonal s = truncate(make_perturbation(0, {}, 0, {1.5}), 2);
  CHECK(s.diag == std::vector<double>{0, 0, 1.5, 0, 0});
  CHECK(s.offdiag == std::vector<double>{1, 1, 1, 1});

  const TruncatedTridiagonal b = truncate(make_perturbation(0, {2.0}, 0, {}), 2);
  CHECK(b.offdiag == std::vector<double>{1, 1, 2, 1});
}

TEST_CASE("truncate requires a free margin around the support") {
  const Perturbation p = make_perturbation(0, {2.0}, 0, {});
  CHECK(min_half_width(p) == 2);
  CHECK_THROWS_AS(truncate(p, 1), PreconditionError);
  CHECK(min_half_width(Perturbation{}) == 1);
  CHECK(min_half_width(make_perturbation(0, {}, -4, {1.0})) == 5);
}

TEST_CASE("TruncatedTridiagonal validates its shape") {
  CHECK_THROWS_AS(TruncatedTridiagonal(0, {1.0, 2.0}, {}), ValidationError);
  CHECK_THROWS_AS(TruncatedTridiagonal(0, {1.0, std::nan("")}, {1.0}), ValidationError);
}

TEST_CASE("negate_b flips the diagonal only") {
  CHECK(vec(negate_b(make_perturbation(0, {}, 0, {1.5})).b()) == std::vector<double>{-1.5});
  CHECK(negate_b(Perturbation{}).is_free());
  const Perturbation p = make_perturbation(0, {2.0}, 0, {0.3, -0.4});
  const Perturbation q = negate_b(p);
  CHECK(vec(q.a()) == std::vector<double>{2.0});
  CHECK(vec(q.b()) == std::vector<double>{-0.3, 0.4});
}

TEST_CASE("sandwich operators") {
  SUBCASE("enlarged bond moves into both neighbouring sites") {
    const SandwichPair s = sandwich(make_perturbation(0, {2.0}, 0, {}));
    CHECK(s.plus.a().empty());
    CHECK(s.plus.b_offset() == 0);
    CHECK(vec(s.plus.b()) == std::vector<double>{1.0, 1.0});
    CHECK(s.minus.a().empty());
    CHECK(vec(s.minus.b()) == std::vector<double>{-1.0, -1.0});
  }
  SUBCASE("subunit bond is kept and adds nothing to b") {
    const SandwichPair s = sandwich(make_perturbation(0, {0.5}, 0, {}));
    CHECK(vec(s.plus.a()) == std::vector<double>{0.5});
    CHECK(s.plus.b().empty());
    CHECK(vec(s.minus.a()) == std::vector<double>{0.5});
    CHECK(s.minus.b().empty());
  }
  SUBCASE("negative b goes to the lower operator") {
    const SandwichPair s = sandwich(make_perturbation(0, {}, 0, {-2.0}));
    CHECK(s.plus.is_free());
    CHECK(vec(s.minus.b()) == std::vector<double>{-2.0});
  }
}

TEST_CASE("the elementary 2x2 block [[a-1, 1-a], [1-a, a-1]] is positive semidefinite") {
  for (double a = 1.0; a <= 5.0; a += 0.125) {
    Eigen::Matrix2d m;
    m << a - 1, 1 - a, 1 - a, a - 1;
    CHECK(oracle::min_eigenvalue(m) >= -1e-14);
  }
}

TEST_CASE("property: sandwich operators bracket J in the semidefinite order") {
  const RandomModel model;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Perturbation p = random_instance(model, i);
    const SandwichPair s = sandwich(p);
    const Index hw = std::max({min_half_width(p), min_half_width(s.plus), min_half_width(s.minus)});
    const Eigen::MatrixXd j = oracle::dense(truncate(p, hw));
    const Eigen::MatrixXd up = oracle::dense(truncate(s.plus, hw));
    const Eigen::MatrixXd lo = oracle::dense(truncate(s.minus, hw));
    CAPTURE(i);
    CHECK(oracle::min_eigenvalue(up - j) >= -1e-10);
    CHECK(oracle::min_eigenvalue(j - lo) >= -1e-10);
  }
}

TEST_CASE("property: negate_b is an involution") {
  const RandomModel model;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Perturbation p = random_instance(model, i);
    CHECK(negate_b(negate_b(p)) == p);
  }
}

TEST_CASE("property: raising b raises the section in the semidefinite order") {
  CounterRng rng(77);
  const RandomModel model;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Perturbation p = random_instance(model, i);
    const Index lo = p.support().lo;
    const Index hi = p.support().hi;
    std::vector<double> b;
    for (Index n = lo; n <= hi; ++n) b.push_back(p.b_at(n) + rng.uniform());
    std::vector<double> a;
    for (Index n = p.bond_range().lo; n <= p.bond_range().hi; ++n) a.push_back(p.a_at(n));
    const Perturbation q = make_perturbation(p.bond_range().lo, a, lo, b);
    const Index hw = std::max(min_half_width(p), min_half_width(q));
    const Eigen::MatrixXd diff = oracle::dense(truncate(q, hw)) - oracle::dense(truncate(p, hw));
    CHECK(oracle::min_eigenvalue(diff) >= -1e-12);
  }
}
