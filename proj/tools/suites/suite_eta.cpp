// SPDX-License-Identifier: MIT
#include <cmath>

#include "suites.hpp"

namespace hecke::suites {

namespace {

SeriesMat2 random_unit(Sampler& S, int order) {
  for (;;) {
    SeriesMat2 m(order);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k <= order; ++k) m.at(i, j)[k] = S.gaussian();
    if (std::abs(m.coeff(0).determinant()) > 0.1) return m;
  }
}

SeriesMat2 poly(cplx a0, cplx a1, cplx b0, cplx b1, cplx c0, cplx c1, cplx d0, cplx d1) {
  auto lin = [](cplx x0, cplx x1) { return TruncSeries(std::vector<cplx>{x0, x1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}); };
  return {lin(a0, a1), lin(b0, b1), lin(c0, c1), lin(d0, d1)};
}

}  // namespace

Report verify_eta(const RunConfig& cfg) {
  const Lattice L(cfg.tau);
  Sampler S(cfg.seed, kEtaStream, L);
  Report R("verify-eta", cfg);

  auto& c1 = R.check("eta(AZ) = eta(AZB) for random units A, B at N=8", "oracle", 1e-9);
  const int trials = R.samples_or(500);
  for (int k = 0; k < trials; ++k) {
    const SeriesMat2 A = random_unit(S, kDefaultOrder), B = random_unit(S, kDefaultOrder);
    try {
      c1.observe(eta_invariance_check(A, B), {{"trial", k}});
    } catch (const HeckeError& e) {
      c1.error(e.what(), {{"trial", k}});
    }
  }

  auto& c2 = R.check("eta_at(C M, mu) = C(mu) eta_at(M, mu)", "oracle", 1e-9);
  for (int k = 0; k < R.samples_or(100); ++k) {
    const cplx mu = S.gaussian();
    const SeriesMat2 A = random_unit(S, kDefaultOrder);
    Mat2 C;
    C << S.gaussian(), S.gaussian(), S.gaussian(), S.gaussian();
    const MatFn M = [A, mu](cplx z) { return Mat2(A.eval(z - mu) * mat2(1.0, 0.0, 0.0, z - mu)); };
    const MatFn CM = [M, C](cplx z) { return Mat2(C * M(z)); };
    c2.observe(chordal(eta_at(CM, mu), eta_at(M, mu).apply(C)), {{"mu", to_json(mu)}});
  }

  auto& c3 = R.check("surjectivity witness maps back to every 32-point grid direction", "oracle", 1e-8);
  for (int k = 0; k < 32; ++k) {
    // 30 points on a latitude/longitude grid plus both poles.
    ProjPoint p;
    if (k == 0) p = ProjPoint::infinity();
    else if (k == 1) p = ProjPoint::zero();
    else {
      const int i = (k - 2) / 6, j = (k - 2) % 6;
      const double th = kPi * (i + 1) / 6.0, ph = 2.0 * kPi * j / 6.0;
      p = ProjPoint(std::sin(th) * std::exp(kI * ph), 1.0 - std::cos(th));
    }
    const SeriesMat2 W = surjectivity_witness(p);
    c3.observe(chordal(eta_at(W, 0.0), p), {{"direction", to_json(p)}});
  }

  auto& c4 = R.check("bruhat companion: A(0) Z B = A Z, det B(0) = 1", "closed form", 1e-12);
  for (int k = 0; k < R.samples_or(100); ++k) {
    const SeriesMat2 A = random_unit(S, kDefaultOrder);
    const SeriesMat2 B = bruhat_companion(A);
    const SeriesMat2 Z = SeriesMat2::Z();
    const SeriesMat2 lhs = SeriesMat2::constant(A.coeff(0)) * Z * B;
    const SeriesMat2 rhs = A * Z;
    // AZ is only known to order N, so compare below the top coefficient.
    const double r = max_coeff_diff(lhs.with_order(kDefaultOrder - 1), rhs.with_order(kDefaultOrder - 1));
    c4.observe(std::max(r, std::abs(B.coeff(0).determinant() - 1.0)), {{"trial", k}});
  }

  auto& c5 = R.check("alpha-form pair: ([l1:1], [l1 l2b + 1 : l2b])", "closed form", 1e-10);
  auto& c6 = R.check("beta-form pair: ([1:0], [l2b:1])", "closed form", 1e-10);
  auto& c7 = R.check("h_map of table sequences reproduces both pairs", "closed form", 1e-10);
  for (int k = 0; k < R.samples_or(100); ++k) {
    const cplx l1 = S.gaussian(), l2 = S.gaussian(), m1 = S.gaussian(), m2 = S.gaussian();
    const cplx l2b = l2 / (m2 - m1);
    const json in{{"lambda1", to_json(l1)}, {"lambda2", to_json(l2)}, {"mu1", to_json(m1)}, {"mu2", to_json(m2)}};
    // ((l1, z - m1), (1, 0)), ((z - m2, l2), (0, 1)), diag(1, z - m1)
    const SeriesMat2 a1 = poly(l1, 0.0, -m1, 1.0, 1.0, 0.0, 0.0, 0.0);
    const SeriesMat2 a2 = poly(-m2, 1.0, l2, 0.0, 0.0, 0.0, 1.0, 0.0);
    const SeriesMat2 b1 = poly(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -m1, 1.0);
    const ProjPoint ea1(l1, 1.0), ea2(l1 * l2b + 1.0, l2b), eb1 = ProjPoint::infinity(), eb2(l2b, 1.0);
    c5.observe(std::max(chordal(eta_at(a1.evaluator(), m1), ea1), chordal(eta_at((a1 * a2).evaluator(), m2), ea2)), in);
    c6.observe(std::max(chordal(eta_at(b1.evaluator(), m1), eb1), chordal(eta_at((b1 * a2).evaluator(), m2), eb2)), in);
    const RationalBundle O{0, 0};
    const auto ha = h_map(sequence_from_local(O, {m1, m2}, {ProjPoint(l1, 1.0), ProjPoint(l2, 1.0)}));
    const auto hb = h_map(sequence_from_local(O, {m1, m2}, {ProjPoint::infinity(), ProjPoint(l2, 1.0)}));
    c7.observe(std::max({chordal(ha[0], ea1), chordal(ha[1], ea2), chordal(hb[0], eb1), chordal(hb[1], eb2)}), in);
  }

  auto& c8 = R.check("eta_at rejects rank 0 and rank 2 points (NotInCell)", "identity", 0.0);
  {
    int missed = 0;
    const MatFn id = [](cplx) { return Mat2(Mat2::Identity()); };
    const MatFn zz = [](cplx z) { return Mat2(z * Mat2::Identity()); };
    for (const MatFn& f : {id, zz}) {
      try {
        eta_at(f, 0.0);
        ++missed;
      } catch (const NotInCell&) {
      }
    }
    c8.observe(missed, {{"cases", "identity at 0, z*identity at 0"}});
  }
  return R;
}

}  // namespace hecke::suites
