#include <doctest.h>

#include "core/subspace.hpp"
#include "fixtures.hpp"
#include "laws/generate.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace relcalc;
using fx::cols;
using fx::e;
using fx::vec;

TEST_SUITE("subspace") {

TEST_CASE("span of two independent vectors is the whole plane") {
  const Mat m = cols({vec({1, 1}), vec({1, -1})});
  CHECK(oracle::rank(m) == 2);
  const Subspace s = Subspace::span(m);
  CHECK(s.dim() == 2);
  CHECK(s.is_full());
}

TEST_CASE("span drops dependent and tiny directions") {
  const Mat m = cols({vec({1, 2, 3}), vec({2, 4, 6}), vec({0, 1e-14, 0})});
  CHECK(oracle::rank(m) == 1);
  CHECK(Subspace::span(m).dim() == 1);
  CHECK(Subspace::span(Mat::Zero(3, 2)).dim() == 0);
  CHECK(Subspace::span(Mat(4, 0)).ambient() == 4);
}

TEST_CASE("complement of the diagonal") {
  const double r = 1 / std::sqrt(2.0);
  const Subspace s = fx::span({vec({r, r})});
  const Subspace c = complement(s);
  CHECK(c.dim() == 1);
  // Kernel of the row (1, 1).
  const Mat row = cols({vec({1, 1})}).transpose();
  const Mat ker = oracle::null_space(row);
  CHECK(equal(c, Subspace::span(ker)));
  CHECK(c.contains(vec({r, -r})));
  CHECK(complement(Subspace::zero(3)).is_full());
  CHECK(complement(Subspace::full(3)).is_zero());
}

TEST_CASE("intersection with no common vectors") {
  const Subspace s = fx::span({e(3, 0), e(3, 1)});
  const Subspace t = fx::span({vec({0, 1, 1})});
  // Common vectors solve [S | -T] x = 0.
  Mat st(3, 3);
  st << s.basis(), -t.basis();
  CHECK(oracle::null_space(st).cols() == 0);
  CHECK(intersect(s, t).is_zero());
  CHECK(intersect(s, fx::span({vec({1, 1, 0})})).dim() == 1);
}

TEST_CASE("projector is the outer product") {
  const double r = 1 / std::sqrt(2.0);
  const Mat p = fx::span({vec({r, r})}).projector();
  Mat want(2, 2);
  want << 0.5, 0.5, 0.5, 0.5;
  CHECK((p - want).norm() < 1e-15);
}

TEST_CASE("opening between a line and the diagonal") {
  const double r = 1 / std::sqrt(2.0);
  const Subspace s = fx::span({e(2, 0)}), t = fx::span({vec({r, r})});
  const double brute = oracle::opening(s.basis(), t.basis());
  CHECK(brute == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
  CHECK(opening(s, t) == doctest::Approx(brute).epsilon(1e-12));
  CHECK(opening(s, s) < 1e-15);
  // Different dimensions are at maximal distance.
  CHECK(opening(s, Subspace::full(2)) == doctest::Approx(1.0));
}

TEST_CASE("contains and residual") {
  const Subspace s = fx::span({e(3, 0), e(3, 1)});
  CHECK(s.contains(vec({2, -1, 0})));
  CHECK_FALSE(s.contains(vec({0, 0, 1})));
  CHECK(s.residual(vec({1, 1, 3})) == doctest::Approx(3.0));
}

TEST_CASE("dimension mismatches are reported") {
  const Subspace a = Subspace::full(2), b = Subspace::full(3);
  CHECK_THROWS_AS(sum(a, b), Error);
  CHECK_THROWS_AS(intersect(a, b), Error);
  CHECK_THROWS_AS(opening(a, b), Error);
  try {
    sum(a, b);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("random subspaces: lattice identities") {
  Rng rng(2024);
  for (int t = 0; t < 200; ++t) {
    const int m = rng.integer(1, 7);
    const Subspace s = rng.subspace(m, rng.integer(0, m));
    const Subspace u = rng.subspace(m, rng.integer(0, m));
    CAPTURE(t);
    CHECK(s.dim() == oracle::rank(s.basis()));
    CHECK(equal(complement(complement(s)), s));
    CHECK(s.dim() + complement(s).dim() == m);
    CHECK(sum(s, u).dim() + intersect(s, u).dim() == s.dim() + u.dim());
    CHECK(equal(complement(sum(s, u)), intersect(complement(s), complement(u))));
    CHECK(leq(intersect(s, u), s));
    CHECK(leq(s, sum(s, u)));
    const double o = opening(s, u);
    CHECK(o >= 0.0);
    CHECK(o <= 1.0 + 1e-12);
    CHECK(o == doctest::Approx(opening(u, s)).epsilon(1e-12));
    CHECK(o == doctest::Approx(oracle::opening(s.basis(), u.basis())).epsilon(1e-7));
    const Mat p = s.projector();
    CHECK((p * p - p).norm() < 1e-12);
    CHECK((p - p.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("excess is the directed distance") {
  const Subspace s = fx::span({e(3, 0)}), t = fx::span({e(3, 0), e(3, 1)});
  CHECK(excess(s, t) < 1e-15);
  CHECK(excess(t, s) == doctest::Approx(1.0));
  CHECK(leq(s, t));
  CHECK_FALSE(leq(t, s));
}

}  // TEST_SUITE
