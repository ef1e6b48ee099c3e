// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>

#include "suites.hpp"

namespace hecke::suites {

namespace {

double rel(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace

Report verify_theta(const RunConfig& cfg) {
  const Lattice L(cfg.tau);
  const cplx tau = L.tau();
  Sampler S(cfg.seed, kThetaStream, L);
  Report R("verify-theta", cfg);
  const int n = R.samples_or(100);

  // Samples stay 0.05 away from the zero set so relative residuals are meaningful.
  auto draw_pair = [&](cplx T, auto zero_of) {
    for (;;) {
      const cplx w = S.lift();
      const cplx z = S.uniform(-0.5, 1.5) + S.uniform(-0.5, 1.5) * T;
      if (lattice_distance(z - zero_of(w), T) > 0.05) return std::make_pair(z, w);
    }
  };
  auto theta_zero = [](cplx w) { return w; };

  auto& c1 = R.check("theta_w(z+1) = theta_w(z)", "closed form", 1e-9);
  auto& c2 = R.check("theta_w(z+tau) = f_w(z) theta_w(z)", "closed form", 1e-9);
  auto& c3 = R.check("theta_w(-z) = theta_(-w-tau)(z)", "closed form", 1e-9);
  for (int k = 0; k < n; ++k) {
    const auto [z, w] = draw_pair(tau, theta_zero);
    const json in{{"z", to_json(z)}, {"w", to_json(w)}};
    c1.observe(rel(theta_w(L, z + 1.0, w), theta_w(L, z, w)), in);
    c2.observe(rel(theta_w(L, z + tau, w), automorphy_factor(z, w) * theta_w(L, z, w)), in);
    c3.observe(rel(theta_w(L, -z, w), theta_w(L, z, -w - tau)), in);
  }

  auto& c4 = R.check("theta~_w(z+1) = theta~_w(z)", "closed form", 1e-9);
  auto& c5 = R.check("theta~_w(z+2tau) = f_w(z) theta~_w(z)", "closed form", 1e-9);
  auto& c6 = R.check("theta~_w(-z) = theta~_(-w-2tau)(z)", "closed form", 1e-9);
  for (int k = 0; k < n; ++k) {
    const auto [z, w] = draw_pair(2.0 * tau, theta_zero);
    const json in{{"z", to_json(z)}, {"w", to_json(w)}};
    c4.observe(rel(theta_tilde_w(L, z + 1.0, w), theta_tilde_w(L, z, w)), in);
    c5.observe(rel(theta_tilde_w(L, z + 2.0 * tau, w), automorphy_factor(z, w) * theta_tilde_w(L, z, w)), in);
    c6.observe(rel(theta_tilde_w(L, -z, w), theta_tilde_w(L, z, -w - 2.0 * tau)), in);
  }

  auto& c7 = R.check("g_w(z+1) = g_w(z)", "closed form", 1e-9);
  auto& c8 = R.check("g_w(z+tau) = g_w(z) + 1", "closed form", 1e-9);
  auto& c9 = R.check("g~_w(z+2tau) = g~_w(z) + 1", "closed form", 1e-9);
  auto& c10 = R.check("termwise theta' vs central difference (h = 1e-5)", "oracle", 1e-6);
  for (int k = 0; k < n; ++k) {
    const auto [z, w] = draw_pair(tau, theta_zero);
    const json in{{"z", to_json(z)}, {"w", to_json(w)}};
    const cplx g = g_w(L, z, w);
    const double s = std::max(1.0, std::abs(g));
    c7.observe(std::abs(g_w(L, z + 1.0, w) - g) / s, in);
    c8.observe(std::abs(g_w(L, z + tau, w) - g - 1.0) / s, in);
    const cplx zt = z + S.uniform(0.0, 1.0) * tau;  // probe the doubled lattice
    if (lattice_distance(zt - w, 2.0 * tau) > 0.05) {
      const cplx gt = g_tilde_w(L, zt, w);
      c9.observe(std::abs(g_tilde_w(L, zt + 2.0 * tau, w) - gt - 1.0) / std::max(1.0, std::abs(gt)), in);
    }
    const double h = 1e-5;
    const cplx fd = (theta_w(L, z + h, w) - theta_w(L, z - h, w)) / (2.0 * h);
    c10.observe(rel(theta_w_deriv(L, z, w), fd), in);
  }

  auto& c11 = R.check("theta(-z) = theta(z) and theta((1+tau)/2) = 0", "closed form", 1e-10);
  for (int k = 0; k < n; ++k) {
    const cplx z = S.lift(-0.5, 1.5);
    c11.observe(rel(theta(-z, tau), theta(z, tau)), {{"z", to_json(z)}});
  }
  c11.observe(std::abs(theta(0.5 * (1.0 + tau), tau)) / std::abs(theta(0.0, tau)), {{"z", "(1+tau)/2"}});

  auto& c12 = R.check("h(-z) = h(z)", "closed form", 1e-9);
  auto& c13 = R.check("h(z+1) = h(z), h(z+tau) = h(z)", "closed form", 1e-9);
  auto& c14 = R.check("pi_cover(p) = pi_cover(-p)", "closed form", 1e-9);
  for (int k = 0; k < n; ++k) {
    const cplx z = S.lift(-0.5, 1.5);
    const json in{{"z", to_json(z)}};
    const ProjPoint a = pi_cover(L, z);
    if (!a.is_zero(1e-3)) {  // h finite and moderate
      const cplx hz = h_map(L, z);
      const double s = std::max(1.0, std::abs(hz));
      c12.observe(std::abs(h_map(L, -z) - hz) / s, in);
      c13.observe(std::max(std::abs(h_map(L, z + 1.0) - hz), std::abs(h_map(L, z + tau) - hz)) / s, in);
    }
    c14.observe(chordal(a, pi_cover(L, -z)), in);
  }

  auto& c15 = R.check("branch points pairwise distinct (min chordal)", "oracle", 0.0);
  double dmin = INFINITY;
  const auto& bp = L.branch_points();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) dmin = std::min(dmin, chordal(bp[i], bp[j]));
  // Residual form: pass iff the minimum separation is positive.
  c15.observe(dmin > 1e-6 ? 0.0 : 1.0, {{"min_chordal", dmin}});
  json bj = json::array();
  for (const auto& b : bp) bj.push_back(to_json(b));
  c15.extra["branch_points"] = bj;

  auto& c16 = R.check("invert_cover(pi_cover(p)) = {p, -p}", "oracle", 1e-7);
  auto& c17 = R.check("invert_cover pair sums to [0]", "closed form", 1e-7);
  for (int k = 0; k < n; ++k) {
    const cplx p = S.lift();
    const json in{{"p", to_json(p)}};
    try {
      const auto [u, v] = invert_cover(L, pi_cover(L, p));
      const double d = std::min(std::max(L.distance_to_lattice(u.lift - p), L.distance_to_lattice(v.lift + p)),
                                std::max(L.distance_to_lattice(u.lift + p), L.distance_to_lattice(v.lift - p)));
      c16.observe(d, in);
      c17.observe(L.distance_to_lattice(u.lift + v.lift), in);
    } catch (const HeckeError& e) {
      c16.error(e.what(), in);
    }
  }
  auto& c18 = R.check("invert_cover(a_i) = {[z_i], [z_i]}", "identity", 1e-9);
  for (int i = 0; i < 4; ++i) {
    const auto [u, v] = invert_cover(L, bp[i]);
    const cplx zi = L.torsion_lifts()[i];
    c18.observe(std::max(L.distance_to_lattice(u.lift - zi), L.distance_to_lattice(v.lift - zi)), {{"i", i}});
  }

  auto& c19 = R.check("2 halve_sum(p,q) = p + q; halve_sum + [z_i] solves 2e = p + q", "identity", 1e-12);
  for (int k = 0; k < n; ++k) {
    const CurvePoint p = S.point(), q = S.point();
    const CurvePoint e = L.halve_sum(p, q);
    double r = L.distance_to_lattice(L.add(e, e).lift - L.add(p, q).lift);
    for (cplx zi : L.torsion_lifts()) r = std::max(r, L.distance_to_lattice(2.0 * (e.lift + zi) - p.lift - q.lift));
    r = std::max(r, L.distance_to_lattice(L.add(p, L.neg(p)).lift));
    c19.observe(r, {{"p", to_json(p.lift)}, {"q", to_json(q.lift)}});
  }

  auto& c20 = R.check("det automorphy(G2(p)) = f_p, det automorphy(F2) = 1", "closed form", 1e-9);
  for (int k = 0; k < n; ++k) {
    const cplx p = S.lift(), z = S.lift(-0.5, 1.5);
    const cplx d = automorphy(EllipticBundle::g2(p), z).determinant();
    const cplx f = automorphy_factor(z, p);
    const double r2 = std::abs(automorphy(EllipticBundle::f2(), z).determinant() - 1.0);
    c20.observe(std::max(rel(d, f), r2), {{"p", to_json(p)}, {"z", to_json(z)}});
  }
  return R;
}

}  // namespace hecke::suites
