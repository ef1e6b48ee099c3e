// SPDX-License-Identifier: MIT
// Rational Hecke transitions, representatives and the moduli map h.
#include <doctest.h>

#include "testing.hpp"

using namespace hecke;
using hecke::testing::Rng;

namespace {

double coeff_dist(const TruncSeries& s, std::vector<cplx> want) {
  want.resize(s.order() + 1, 0.0);
  return max_coeff_diff(s, TruncSeries(want));
}

}  // namespace

TEST_SUITE("rational-hecke") {

TEST_CASE("transition examples") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(single_hecke({n, 0}, ProjPoint::infinity()) == RationalBundle{n, -1});
    CHECK(single_hecke({n, 0}, ProjPoint(0.7, 1.0)) == RationalBundle::make(n - 1, 0));
  }
  Rng r(31);
  for (int t = 0; t < 10; ++t) CHECK(single_hecke({0, 0}, r.proj()) == RationalBundle{0, -1});
  CHECK(single_hecke({3, 3}, ProjPoint(2.0, 1.0)) == RationalBundle{3, 2});
}

TEST_CASE("hecke length changes by one and degree drops by one") {
  Rng r(32);
  for (int n = 0; n <= 5; ++n)
    for (int t = 0; t < 16; ++t) {
      const RationalBundle b{n, 0};
      const ProjPoint d = t == 0 ? ProjPoint::infinity() : r.proj();
      const auto c = single_hecke(b, d);
      CHECK(std::abs(c.hecke_length() - b.hecke_length()) == 1);
      CHECK(c.degree() == b.degree() - 1);
    }
}

TEST_CASE("representative matrices") {
  const cplx mu(0.3, -0.2), lam(1.5, 0.5);
  const auto u = morphism_matrix({2, 0}, {mu, ProjPoint::infinity()});
  CHECK(coeff_dist(u.at(0, 0), {1.0}) == 0.0);
  CHECK(coeff_dist(u.at(0, 1), {}) == 0.0);
  CHECK(coeff_dist(u.at(1, 1), {-mu, 1.0}) == 0.0);
  const auto d = morphism_matrix({2, 0}, {mu, ProjPoint(lam, 1.0)});
  CHECK(coeff_dist(d.at(0, 0), {-mu, 1.0}) == 0.0);
  CHECK(coeff_dist(d.at(0, 1), {lam}) < 1e-15);
  CHECK(coeff_dist(d.at(1, 0), {}) == 0.0);
  CHECK(coeff_dist(d.at(1, 1), {1.0}) == 0.0);
  const auto s = morphism_matrix({0, 0}, {mu, ProjPoint(lam, 1.0)});
  CHECK(coeff_dist(s.at(0, 0), {lam}) < 1e-15);
  CHECK(coeff_dist(s.at(0, 1), {-mu, 1.0}) == 0.0);
  CHECK(coeff_dist(s.at(1, 0), {1.0}) == 0.0);
  CHECK(coeff_dist(s.at(1, 1), {}) == 0.0);
}

TEST_CASE("every representative has det a multiple of z - mu and eta equal to its direction") {
  Rng r(33);
  for (int n = 0; n <= 3; ++n)
    for (int t = 0; t < 10; ++t) {
      const cplx mu = r.gaussian();
      const ProjPoint d = t == 0 ? ProjPoint::infinity() : ProjPoint(r.gaussian(), 1.0);
      const auto a = morphism_matrix({n, 0}, {mu, d});
      const auto det = a.det();
      CHECK(det.degree(1e-14) == 1);
      CHECK(std::abs(det.eval(mu)) < 1e-14);
      CHECK(chordal(eta_at(a, mu), d) < 1e-10);
    }
}

TEST_CASE("chart conversion") {
  const cplx mu(0.3, 0.1), lam(-0.4, 2.0);
  for (int n = 1; n <= 4; ++n) {
    const auto u = chart_convert(morphism_matrix({n, 0}, {mu, ProjPoint::infinity()}), {n, 0}, {n, -1});
    // Identity at w = 0 with the 1 - mu w correction on the modified entry.
    SeriesMat2 want_u = SeriesMat2::identity(n);
    want_u.at(1, 1)[1] = -mu;
    CHECK(max_coeff_diff(u.with_order(n), want_u) < 1e-15);
    const auto d = chart_convert(morphism_matrix({n, 0}, {mu, ProjPoint(lam, 1.0)}), {n, 0}, {n - 1, 0});
    SeriesMat2 want = SeriesMat2::identity(n);
    want.at(0, 0)[1] = -mu;
    want.at(0, 1)[n] = lam;
    CHECK(max_coeff_diff(d.with_order(n), want) < 1e-15);
  }
  auto bad = morphism_matrix({2, 0}, {mu, ProjPoint::infinity()});
  bad.at(0, 0)[2] += 1.0;
  CHECK_THROWS_AS(chart_convert(bad, {2, 0}, {2, -1}), NotGlobal);
}

TEST_CASE("h_map on the two-step forms") {
  Rng r(34);
  CHECK(h_map({{0, 0}, {}}).empty());
  for (int t = 0; t < 30; ++t) {
    const cplx l1 = r.gaussian(), l2 = r.gaussian(), m1 = r.gaussian(), m2 = r.gaussian();
    const cplx l2b = l2 / (m2 - m1);
    const auto ha = h_map(sequence_from_local({0, 0}, {m1, m2}, {ProjPoint(l1, 1.0), ProjPoint(l2, 1.0)}));
    CHECK(chordal(ha[0], ProjPoint(l1, 1.0)) < 1e-10);
    CHECK(chordal(ha[1], ProjPoint(l1 * l2b + 1.0, l2b)) < 1e-10);
    const auto hb = h_map(sequence_from_local({0, 0}, {m1, m2}, {ProjPoint::infinity(), ProjPoint(l2, 1.0)}));
    CHECK(chordal(hb[0], ProjPoint::infinity()) < 1e-10);
    CHECK(chordal(hb[1], ProjPoint(l2b, 1.0)) < 1e-10);
  }
}

TEST_CASE("membership by iteration equals the closed-form complement") {
  Rng r(35);
  const ProjPoint a = r.proj(), b = r.proj(), c = r.proj();
  CHECK_FALSE(membership_H(2, {a, a}));
  CHECK(membership_H(2, {a, b}));
  CHECK_FALSE(membership_H(3, {a, a, a}));
  CHECK(membership_H(3, {a, a, c}));
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    std::vector<ProjPoint> d;
    for (int i = 0; i < n; ++i) d.push_back(t % 5 == 0 ? a : r.proj());
    CHECK(membership_H(n, d) == membership_H_closed_form(d));
  }
  CHECK_THROWS_AS(membership_H_closed_form({a, b, c, a}), Unsupported);
}

TEST_CASE("r equal leading directions give O + O(-r)") {
  Rng r(36);
  for (int k = 1; k <= 5; ++k) {
    const ProjPoint a = r.proj();
    RationalSequence seq{{0, 0}, {}};
    for (int i = 0; i < k; ++i) seq.steps.push_back({r.gaussian(), a});
    CHECK(terminal_bundle(seq) == RationalBundle{0, -k});
  }
}

}
