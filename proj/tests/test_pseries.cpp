// SPDX-License-Identifier: MIT
// Truncated series arithmetic against naive coefficient loops.
#include <doctest.h>

#include "testing.hpp"

using namespace hecke;
using hecke::testing::Rng;

namespace {

// Direct Cauchy product, independent of the library's loop order.
std::vector<cplx> naive_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> c(a.size(), 0.0);
  for (size_t k = 0; k < c.size(); ++k)
    for (size_t i = 0; i <= k; ++i) c[k] += a[i] * b[k - i];
  return c;
}

double dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_SUITE("pseries") {

TEST_CASE("(1+z)(1-z) = 1 - z^2 at order 3") {
  const TruncSeries a({1.0, 1.0, 0.0, 0.0}), b({1.0, -1.0, 0.0, 0.0});
  const auto c = a * b;
  CHECK(c.order() == 3);
  CHECK(std::abs(c[0] - 1.0) == 0.0);
  CHECK(std::abs(c[1]) == 0.0);
  CHECK(std::abs(c[2] + 1.0) == 0.0);
  CHECK(std::abs(c[3]) == 0.0);
}

TEST_CASE("product matches the naive Cauchy sum") {
  Rng r(11);
  for (int t = 0; t < 50; ++t) {
    const auto a = hecke::testing::random_series(r, 8), b = hecke::testing::random_series(r, 8);
    CHECK(dist((a * b).coeffs(), naive_product(a.coeffs(), b.coeffs())) < 1e-13);
  }
}

TEST_CASE("geometric series inverse") {
  const auto inv = invert_unit(TruncSeries({1.0, 1.0, 0.0, 0.0}));
  CHECK(dist(inv.coeffs(), {1.0, -1.0, 1.0, -1.0}) == 0.0);
  CHECK(dist(invert_unit(TruncSeries::constant(1.0, 4)).coeffs(), {1.0, 0.0, 0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("scalar inverse is an involution and a right inverse") {
  Rng r(12);
  for (int t = 0; t < 50; ++t) {
    auto a = hecke::testing::random_series(r, 8);
    a[0] += 5.0;
    const auto b = invert_unit(a);
    CHECK(dist((a * b).coeffs(), TruncSeries::constant(1.0, 8).coeffs()) < 1e-12);
    CHECK(dist(invert_unit(b).coeffs(), a.coeffs()) < 1e-12);
  }
}

TEST_CASE("non-units are rejected") {
  CHECK_THROWS_AS(invert_unit(TruncSeries::linear(0.0, 4)), NonUnit);
  CHECK_THROWS_AS(invert_unit(SeriesMat2::Z(4)), NonUnit);
}

TEST_CASE("matrix product entrywise matches naive sums") {
  Rng r(13);
  const auto A = hecke::testing::random_unit(r, 6), B = hecke::testing::random_unit(r, 6);
  const auto C = A * B;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto ref = naive_product(A.at(i, 0).coeffs(), B.at(0, j).coeffs());
      const auto second = naive_product(A.at(i, 1).coeffs(), B.at(1, j).coeffs());
      for (size_t k = 0; k < ref.size(); ++k) ref[k] += second[k];
      CHECK(dist(C.at(i, j).coeffs(), ref) < 1e-12);
    }
  CHECK(max_coeff_diff(SeriesMat2::identity(6) * A, A) == 0.0);
}

TEST_CASE("random unit matrix inverse at order 8") {
  Rng r(14);
  for (int t = 0; t < 20; ++t) {
    const auto A = hecke::testing::random_unit(r, 8);
    const auto B = invert_unit(A);
    CHECK(max_coeff_diff(A * B, SeriesMat2::identity(8)) < 1e-12);
    CHECK(max_coeff_diff(invert_unit(B), A) < 1e-12);
  }
}

TEST_CASE("evaluation agrees with Horner and recentering") {
  Rng r(15);
  const auto a = hecke::testing::random_series(r, 5);
  const cplx z = r.gaussian(), mu = r.gaussian();
  cplx horner = 0.0;
  for (int k = a.order(); k >= 0; --k) horner = horner * z + a[k];
  CHECK(std::abs(a.eval(z) - horner) < 1e-12);
  CHECK(std::abs(a.recentered(mu).eval(z - mu) - a.eval(z)) < 1e-10 * (1.0 + std::abs(horner)));
}

TEST_CASE("determinant is ad - bc") {
  Rng r(16);
  // Cubic entries at order 6, so nothing is truncated.
  auto A = hecke::testing::random_unit(r, 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 4; k <= 6; ++k) A.at(i, j)[k] = 0.0;
  const cplx z = 0.3 * r.gaussian();
  const Mat2 v = A.eval(z);
  CHECK(std::abs(A.det().eval(z) - v.determinant()) < 1e-10);
}

TEST_CASE("bruhat companion") {
  CHECK(max_coeff_diff(bruhat_companion(SeriesMat2::identity(8)), SeriesMat2::identity(8)) == 0.0);
  Mat2 c = mat2(2.0, 1.0, 0.5, 3.0);
  CHECK(max_coeff_diff(bruhat_companion(SeriesMat2::constant(c, 8)), SeriesMat2::identity(8)) < 1e-15);
  Rng r(17);
  for (int t = 0; t < 20; ++t) {
    const auto A = hecke::testing::random_unit(r, 8);
    const auto B = bruhat_companion(A);
    const auto Z = SeriesMat2::Z(8);
    const auto lhs = SeriesMat2::constant(A.coeff(0), 8) * Z * B;
    const auto rhs = A * Z;
    CHECK(max_coeff_diff(lhs.with_order(7), rhs.with_order(7)) < 1e-10);
    CHECK(std::abs(B.coeff(0).determinant() - 1.0) < 1e-12);
  }
}

}
