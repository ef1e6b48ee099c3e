// SPDX-License-Identifier: MIT
// Elliptic Hecke representatives, transitions and the moduli map.
#include <doctest.h>

#include "testing.hpp"

using namespace hecke;
using hecke::testing::Rng;

namespace {

// Spread of f / g over a few points; zero iff f = c g with c constant.
double ratio_spread(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g, const Lattice& L) {
  std::vector<cplx> rs;
  for (double x : {0.11, 0.37, 0.62, 0.83}) {
    const cplx z = x + (1.0 - x) * L.tau();
    rs.push_back(f(z) / g(z));
  }
  double d = 0.0;
  for (cplx v : rs) d = std::max(d, std::abs(v - rs[0]) / std::abs(rs[0]));
  return d;
}

LineBundle point_bundle(CurvePoint p) { return LineBundle::of_point(p); }

}  // namespace

TEST_SUITE("elliptic-hecke") {

TEST_CASE("trivial factor of automorphy") {
  const auto E = EllipticBundle::decomposable({}, {});
  CHECK((automorphy(E, cplx(0.3, 0.4)) - Mat2::Identity()).norm() < 1e-15);
}

TEST_CASE("line bundle isomorphism is up to lattice shifts of the lift") {
  const Lattice L;
  const LineBundle a{0, cplx(0.2, 0.1)};
  CHECK(isomorphic(L, a, LineBundle{0, a.lift + 1.0 - L.tau()}));
  CHECK_FALSE(isomorphic(L, a, LineBundle{0, a.lift + 0.5}));
  CHECK_FALSE(isomorphic(L, a, LineBundle{1, a.lift}));
}

TEST_CASE("O(q) + O at [1:0] is diag(1, theta^(p))") {
  Rng r(61);
  const Lattice L;
  const CurvePoint q{r.lift(L)}, p{r.lift(L)};
  const auto E = EllipticBundle::decomposable(point_bundle(q), {});
  const auto m = morphism_rep(L, E, p, ProjPoint::infinity());
  const cplx z0(0.41, 0.73);
  CHECK(std::abs(m.eval(z0)(1, 0)) < 1e-12 * m.eval(z0).norm());
  CHECK(std::abs(m.eval(z0)(0, 1)) < 1e-12 * m.eval(z0).norm());
  CHECK(ratio_spread([&](cplx z) { return m.eval(z)(0, 0); }, [](cplx) { return cplx(1.0); }, L) < 1e-10);
  CHECK(ratio_spread([&](cplx z) { return m.eval(z)(1, 1); }, [&](cplx z) { return theta_w(L, z, p.lift); }, L) <
        1e-10);
  CHECK(isomorphic(L, m.domain, EllipticBundle::decomposable(point_bundle(q), point_bundle(p).inverse())));
}

TEST_CASE("O + O at [l:1] is ((l, theta^(p)), (1, 0))") {
  Rng r(62);
  const Lattice L;
  const CurvePoint p{r.lift(L)};
  const cplx lam = r.gaussian();
  const auto E = EllipticBundle::decomposable({}, {});
  const auto m = morphism_rep(L, E, p, ProjPoint(lam, 1.0));
  const cplx z0(0.29, 0.51);
  CHECK(std::abs(m.eval(z0)(0, 0) - lam * m.eval(z0)(1, 0)) < 1e-12 * m.eval(z0).norm());
  CHECK(std::abs(m.eval(z0)(1, 1)) < 1e-12 * m.eval(z0).norm());
  CHECK(ratio_spread([&](cplx z) { return m.eval(z)(0, 1); }, [&](cplx z) { return theta_w(L, z, p.lift); }, L) <
        1e-10);
  CHECK(isomorphic(L, single_hecke(L, E, p, ProjPoint(lam, 1.0)),
                   EllipticBundle::decomposable({}, point_bundle(p).inverse())));
}

TEST_CASE("representatives are equivariant and drop rank only at the Hecke point") {
  Rng r(63);
  const Lattice L;
  for (int t = 0; t < 12; ++t) {
    const CurvePoint p{r.lift(L)};
    const ProjPoint a = t % 3 == 0 ? ProjPoint::infinity() : t % 3 == 1 ? ProjPoint::zero() : r.proj();
    EllipticBundle E;
    switch (t % 4) {
      case 0: E = EllipticBundle::decomposable({}, {}); break;
      case 1: E = EllipticBundle::decomposable(point_bundle(CurvePoint{r.lift(L)}), {}); break;
      case 2: E = EllipticBundle::f2(); break;
      default: E = EllipticBundle::g2(p.lift); break;
    }
    const auto m = morphism_rep(L, E, p, a);
    CHECK(check_equivariance(L, m) < 1e-8);
    const auto dz = locate_det_zero(L, m);
    CHECK(dz.winding == 1);
    CHECK(dz.distance < 1e-6);
    CHECK(std::abs(m.domain.hecke_length() - E.hecke_length()) == 1);
    CHECK(m.domain.degree() == E.degree() - 1);
  }
}

TEST_CASE("a corrupted character is caught by the equivariance residual") {
  const Lattice L;
  const CurvePoint p{cplx(0.3, 0.4)};
  auto m = morphism_rep(L, EllipticBundle::decomposable(point_bundle(CurvePoint{cplx(0.6, 0.2)}), {}), p,
                        ProjPoint::infinity());
  m.eval = [&L, p](cplx z) { return mat2(1.0, 0.0, 0.0, theta_w(L, z, p.lift + 0.13)); };
  CHECK(check_equivariance(L, m) > 1e-2);
}

TEST_CASE("single transitions") {
  Rng r(64);
  const Lattice L;
  const CurvePoint p{r.lift(L)};
  CHECK(isomorphic(L, single_hecke(L, EllipticBundle::decomposable(point_bundle(p), {}), p, ProjPoint::zero()),
                   EllipticBundle::decomposable({}, {})));
  CHECK(isomorphic(L, single_hecke(L, EllipticBundle::f2(), p, ProjPoint(0.7, 1.0)),
                   EllipticBundle::g2(p.lift, point_bundle(p).inverse())));
  const ProjPoint a = r.proj();
  const auto [u, v] = invert_cover(L, a);
  const auto F = single_hecke(L, EllipticBundle::g2(p.lift), p, a);
  const bool with_u = isomorphic(L, F, EllipticBundle::decomposable({0, u.lift}, {0, -u.lift}));
  const bool with_v = isomorphic(L, F, EllipticBundle::decomposable({0, v.lift}, {0, -v.lift}));
  CHECK((with_u && with_v));
  for (int i = 0; i < 4; ++i) {
    const LineBundle Li{0, L.torsion_lifts()[i]};
    CHECK(isomorphic(L, single_hecke(L, EllipticBundle::g2(p.lift), p, L.branch_points()[i]),
                     EllipticBundle::f2(Li)));
  }
}

TEST_CASE("bad lines") {
  Rng r(65);
  const Lattice L;
  const CurvePoint p{r.lift(L)};
  CHECK_FALSE(is_good_line(L, EllipticBundle::f2(), p, ProjPoint::infinity()));
  CHECK(is_good_line(L, EllipticBundle::f2(), p, ProjPoint(0.3, 1.0)));
  CHECK(is_good_line(L, EllipticBundle::g2(p.lift), p, r.proj()));
  const LineBundle L2{0, L.torsion_lifts()[2]};
  CHECK_FALSE(is_good_line(L, EllipticBundle::decomposable(L2, L2), p, r.proj()));
}

TEST_CASE("moduli coordinate") {
  const Lattice L;
  CHECK(same_point(mss_coordinate(L, EllipticBundle::decomposable({}, {})), L.branch_points()[0]));
  const LineBundle M{0, cplx(0.31, 0.52)};
  CHECK(same_point(mss_coordinate(L, EllipticBundle::decomposable(M, M.inverse())),
                   mss_coordinate(L, EllipticBundle::decomposable(M.inverse(), M))));
  for (int i = 0; i < 4; ++i) {
    const LineBundle Li{0, L.torsion_lifts()[i]};
    CHECK(same_point(mss_coordinate(L, EllipticBundle::f2(Li)),
                     mss_coordinate(L, EllipticBundle::decomposable(Li, Li))));
  }
}

TEST_CASE("double modifications of O + O") {
  Rng r(66);
  const Lattice L;
  const auto O = EllipticBundle::decomposable({}, {});
  for (int t = 0; t < 20; ++t) {
    const CurvePoint p1{r.lift(L)}, p2{r.lift(L)};
    const ProjPoint a = r.proj(), b = r.proj();
    const auto res = double_hecke(L, O, p1, p2, a, b);
    CHECK_FALSE(res.unstable);
    const cplx h = 0.5 * (p2.lift - p1.lift);
    CHECK(isomorphic(L, res.cls, EllipticBundle::decomposable({0, h}, {0, -h})));
    CHECK(same_s_class(L, res, double_hecke_chained(L, O, p1, p2, a, b)));
    CHECK(double_hecke(L, O, p1, p2, a, a).unstable);
    CHECK(double_hecke_chained(L, O, p1, p2, a, a).unstable);
  }
}

TEST_CASE("table and chained double modifications agree on random inputs") {
  Rng r(67);
  const Lattice L;
  for (int t = 0; t < 30; ++t) {
    const CurvePoint p1{r.lift(L)}, p2{r.lift(L)};
    const LineBundle M{0, r.lift(L)};
    const EllipticBundle E = t % 2 ? EllipticBundle::decomposable(M, M.inverse()) : EllipticBundle::f2();
    const ProjPoint a = t % 3 == 0 ? ProjPoint::infinity() : r.proj(), b = r.proj();
    CHECK(same_s_class(L, double_hecke(L, E, p1, p2, a, b), double_hecke_chained(L, E, p1, p2, a, b)));
  }
}

TEST_CASE("h_total roundtrip and the excluded curve") {
  Rng r(68);
  const Lattice L;
  const CurvePoint q{r.lift(L)};
  const auto s0 = construct_sequence(L, {r.proj()}, q, {});
  CHECK(h_total(L, s0).size() == 1);
  CHECK(same_point(h_total(L, s0)[0], mss_coordinate(L, s0.base)));
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 10; ++t) {
      std::vector<ProjPoint> tuple;
      std::vector<CurvePoint> pts;
      for (int i = 0; i <= n; ++i) tuple.push_back(r.proj());
      for (int i = 0; i < n; ++i) pts.push_back({r.lift(L)});
      const auto s = construct_sequence(L, tuple, q, pts);
      const auto h = h_total(L, s);
      for (int i = 0; i <= n; ++i) CHECK(chordal(h[i], tuple[i]) < 1e-7);
      if (n == 1) CHECK(membership_Hp(L, s));
    }
  const CurvePoint p1{r.lift(L)}, p2{r.lift(L)};
  for (int t = 0; t < 5; ++t) {
    const auto f = f_embedding(L, CurvePoint{r.lift(L)}, q, p1, p2);
    CHECK_FALSE(membership_Hp_tuple(L, {f[0], f[1], f[2]}, q, {p1, p2}));
    CHECK(distance_to_f(L, f, q, p1, p2).distance < 1e-6);
  }
}

}
