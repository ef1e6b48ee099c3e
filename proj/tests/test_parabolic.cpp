// SPDX-License-Identifier: MIT
// Parabolic degree, good and bad lines, stability and the Hecke embeddings.
#include <doctest.h>

#include "testing.hpp"

using namespace hecke;
using hecke::testing::Rng;

namespace {

ParabolicBundle oo(const std::vector<ProjPoint>& lines, double w = kDefaultWeight) {
  ParabolicBundle pb{RationalBundle{0, 0}, {}, w};
  for (size_t i = 0; i < lines.size(); ++i) pb.marks.push_back({cplx(double(i), 0.5), lines[i]});
  return pb;
}

}  // namespace

TEST_SUITE("parabolic") {

TEST_CASE("parabolic degrees") {
  Rng r(71);
  CHECK(pdeg(oo({r.proj(), r.proj()})) == 0.0);
  CHECK(pdeg_line(2, {1, 1, 1}, 0.01) == doctest::Approx(2.03));
  CHECK(pdeg_line(-1, {1, -1}, 0.01) == doctest::Approx(-1.0));
}

TEST_CASE("verdicts on O + O") {
  Rng r(72);
  const ProjPoint a = r.proj(), b = r.proj(), c = r.proj();
  CHECK(stability(oo({a})).verdict == Verdict::Unstable);
  CHECK(stability(oo({a, a})).verdict == Verdict::Unstable);
  CHECK(stability(oo({a, b})).verdict == Verdict::StrictlySemistable);
  CHECK(stability(oo({a, b, c})).verdict == Verdict::Stable);
  CHECK(stability(oo({a, a, c})).verdict == Verdict::Unstable);
  CHECK(stability(oo({a, b, c}, 1e-4)).verdict == Verdict::Stable);
  CHECK_THROWS_AS(stability(oo({a, b, c}, 0.2)), ConfigError);
}

TEST_CASE("line classification on elliptic bundles") {
  Rng r(73);
  const Lattice L;
  const cplx p = r.lift(L);
  auto one = [&](EllipticBundle E, ProjPoint line) {
    return ParabolicBundle{E, {{p, line}}, kDefaultWeight, L};
  };
  CHECK(classify_lines(one(EllipticBundle::f2(), ProjPoint::infinity())).bad[0]);
  CHECK_FALSE(classify_lines(one(EllipticBundle::f2(), ProjPoint(0.4, 1.0))).bad[0]);
  CHECK_FALSE(classify_lines(one(EllipticBundle::g2(p), r.proj())).bad[0]);
  const LineBundle L1{0, L.torsion_lifts()[1]};
  CHECK(classify_lines(one(EllipticBundle::decomposable(L1, L1), r.proj())).bad[0]);
  CHECK(stability(one(EllipticBundle::g2(p), r.proj())).verdict == Verdict::Stable);
}

TEST_CASE("lines and sequences correspond") {
  Rng r(74);
  RationalSequence seq{{0, 0}, {}};
  for (int i = 0; i < 4; ++i) seq.steps.push_back({r.gaussian(), r.proj()});
  const auto back = sequence_from_lines(seq.base, lines_from_sequence(seq));
  for (size_t i = 0; i < seq.steps.size(); ++i) {
    CHECK(back.steps[i].point == seq.steps[i].point);
    CHECK(same_point(back.steps[i].direction, seq.steps[i].direction));
  }
}

TEST_CASE("rational hecke embeddings are stable") {
  Rng r(75);
  const std::vector<Mark> aux{{cplx(5.0, 0.0), ProjPoint::infinity()},
                              {cplx(6.0, 0.0), ProjPoint::zero()},
                              {cplx(7.0, 0.0), ProjPoint(1.0, 1.0)}};
  CHECK(stability(hecke_embedding(RationalSequence{{0, 0}, {}}, aux)).verdict == Verdict::Stable);
  for (int t = 0; t < 20; ++t) {
    RationalSequence seq{{0, 0}, {{r.gaussian(), r.proj()}, {r.gaussian(), r.proj()}}};
    CHECK(stability(hecke_embedding(seq, aux)).verdict == Verdict::Stable);
  }
  RationalSequence bad{{0, 0}, {{0.1, ProjPoint::zero()}, {0.2, ProjPoint::zero()}}};
  CHECK_THROWS_AS(hecke_embedding(bad, aux), TerminalNotMinimal);
}

TEST_CASE("elliptic hecke embeddings are stable") {
  Rng r(76);
  const Lattice L;
  const CurvePoint q{r.lift(L)};
  for (int t = 0; t < 10; ++t) {
    const std::vector<CurvePoint> pts{{r.lift(L)}, {r.lift(L)}};
    const auto s = construct_sequence(L, {r.proj(), r.proj(), r.proj()}, q, pts);
    if (!membership_Hp(L, s)) continue;
    CHECK(stability(hecke_embedding(L, s)).verdict == Verdict::Stable);
  }
}

}
