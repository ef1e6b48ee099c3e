// SPDX-License-Identifier: MIT
// Direction map on the Bruhat cell and CP^1 utilities.
#include <doctest.h>

#include "testing.hpp"

using namespace hecke;
using hecke::testing::Rng;

namespace {

SeriesMat2 poly(cplx a0, cplx a1, cplx b0, cplx b1, cplx c0, cplx c1, cplx d0, cplx d1, int order = 8) {
  auto s = [order](cplx x0, cplx x1) {
    TruncSeries t(order);
    t[0] = x0;
    t[1] = x1;
    return t;
  };
  return {s(a0, a1), s(b0, b1), s(c0, c1), s(d0, d1)};
}

}  // namespace

TEST_SUITE("grassmannian") {

TEST_CASE("ProjPoint normalization and chordal distance") {
  const ProjPoint p(2.0, 4.0), q(1.0, 2.0);
  CHECK(same_point(p, q));
  CHECK(chordal(p, q) < 1e-15);
  CHECK(std::abs(chordal(ProjPoint::infinity(), ProjPoint::zero()) - 1.0) < 1e-15);
  CHECK(ProjPoint(1e-12, 1.0).is_zero());
  CHECK(ProjPoint(1.0, 1e-12).is_infinity());
  CHECK(ProjPoint(1.0, 1.0).is_generic());
}

TEST_CASE("closed-form singular values against Eigen's SVD") {
  Rng r(21);
  for (int t = 0; t < 100; ++t) {
    Mat2 m = mat2(r.gaussian(), r.gaussian(), r.gaussian(), r.gaussian());
    if (t % 3 == 0) m.col(1) = r.gaussian() * m.col(0);
    const auto sv = singular_values(m);
    Eigen::JacobiSVD<Mat2> svd(m);
    CHECK(std::abs(sv.s1 - svd.singularValues()(0)) < 1e-12 * (1 + sv.s1));
    CHECK(std::abs(sv.s2 - svd.singularValues()(1)) < 1e-12 * (1 + sv.s1));
  }
}

TEST_CASE("eta_at on the table representatives") {
  Rng r(22);
  for (int t = 0; t < 50; ++t) {
    const cplx l1 = r.gaussian(), l2 = r.gaussian(), m1 = r.gaussian(), m2 = r.gaussian();
    const cplx l2b = l2 / (m2 - m1);
    const auto Z = poly(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -m1, 1.0);
    CHECK(same_point(eta_at(Z, m1), ProjPoint::infinity()));
    const auto a1 = poly(l1, 0.0, -m1, 1.0, 1.0, 0.0, 0.0, 0.0);
    const auto a2 = poly(-m2, 1.0, l2, 0.0, 0.0, 0.0, 1.0, 0.0);
    CHECK(chordal(eta_at(a1, m1), ProjPoint(l1, 1.0)) < 1e-10);
    CHECK(chordal(eta_at(a1 * a2, m2), ProjPoint(l1 * l2b + 1.0, l2b)) < 1e-10);
    CHECK(chordal(eta_at(Z * a2, m2), ProjPoint(l2b, 1.0)) < 1e-10);
  }
}

TEST_CASE("in_bruhat_cell") {
  CHECK(in_bruhat_cell(SeriesMat2::Z()));
  CHECK_FALSE(in_bruhat_cell(SeriesMat2::identity()));
  const auto zz = poly(0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0);
  CHECK_FALSE(in_bruhat_cell(zz));
}

TEST_CASE("eta is invariant under right multiplication by units") {
  CHECK(eta_invariance_check(SeriesMat2::identity(), SeriesMat2::identity()) < 1e-15);
  Rng r(23);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const auto A = hecke::testing::random_unit(r, 8), B = hecke::testing::random_unit(r, 8);
    worst = std::max(worst, eta_invariance_check(A, B));
    if (t < 10) CHECK(eta_invariance_check(A, SeriesMat2::identity()) < 1e-12);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("eta of A Z is the first column of A(0)") {
  Rng r(24);
  for (int t = 0; t < 50; ++t) {
    const auto A = hecke::testing::random_unit(r, 8);
    const ProjPoint col(Vec2(A.coeff(0).col(0)));
    CHECK(chordal(eta_at(A * SeriesMat2::Z(), 0.0), col) < 1e-10);
  }
}

TEST_CASE("surjectivity witness") {
  Rng r(25);
  for (int t = 0; t < 50; ++t) {
    const ProjPoint p = t == 0 ? ProjPoint::infinity() : t == 1 ? ProjPoint::zero() : r.proj();
    const auto w = surjectivity_witness(p);
    CHECK(in_bruhat_cell(w));
    CHECK(chordal(eta_at(w, 0.0), p) < 1e-12);
  }
}

TEST_CASE("eta_at rejects points off the cell") {
  const MatFn id = [](cplx) { return Mat2(Mat2::Identity()); };
  const MatFn zero = [](cplx z) { return Mat2(z * Mat2::Identity()); };
  CHECK_THROWS_AS(eta_at(id, 0.0), NotInCell);
  CHECK_THROWS_AS(eta_at(zero, 0.0), NotInCell);
}

}
