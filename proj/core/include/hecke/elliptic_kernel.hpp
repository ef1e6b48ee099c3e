// SPDX-License-Identifier: MIT
// Theta functions, the elliptic functions g, g~, h, the double cover
// X -> CP^1 and the group law on X = C / (Z + tau Z).
#pragma once

#include <array>
#include <utility>

#include "hecke/grassmannian.hpp"
#include "hecke/types.hpp"

namespace hecke {

inline constexpr double kPoleGuard = 1e-6;
inline const cplx kDefaultTau{0.21, 1.3};

struct ThetaValue {
  cplx value;
  cplx deriv;  // d/dz
};

// theta(z, T) = sum_n exp(pi i (n^2 T + 2 n z)) and its z-derivative.
ThetaValue theta_full(cplx z, cplx T);
cplx theta(cplx z, cplx T);

// Distance from z to the lattice Z + T Z.
double lattice_distance(cplx z, cplx T);

// A point of X, carried by its canonical lift in [0,1) + [0,1) tau.
struct CurvePoint {
  cplx lift;
};

class Lattice {
 public:
  explicit Lattice(cplx tau = kDefaultTau);

  cplx tau() const { return tau_; }
  // (x, y) with z = x + y tau.
  std::pair<double, double> coords(cplx z) const;
  cplx reduce(cplx z) const;
  CurvePoint point(cplx z) const { return {reduce(z)}; }
  double distance_to_lattice(cplx z) const { return lattice_distance(z, tau_); }
  bool congruent(cplx a, cplx b, double tol = 1e-9) const {
    return distance_to_lattice(a - b) < tol;
  }

  CurvePoint add(CurvePoint p, CurvePoint q) const { return point(p.lift + q.lift); }
  CurvePoint neg(CurvePoint p) const { return point(-p.lift); }
  CurvePoint sub(CurvePoint p, CurvePoint q) const { return point(p.lift - q.lift); }
  // e with lift (p~ + q~)/2, one of the four solutions of 2e = p + q.
  CurvePoint halve_sum(CurvePoint p, CurvePoint q) const { return point(0.5 * (p.lift + q.lift)); }

  // z_1..z_4 = 0, 1/2, tau/2, 1/2 + tau/2.
  const std::array<cplx, 4>& torsion_lifts() const { return torsion_; }
  // a_i = pi([z_i]).
  const std::array<ProjPoint, 4>& branch_points() const { return branch_; }
  // Index in 0..3 of the branch point within tol of a, or -1.
  int branch_index(const ProjPoint& a, double tol = kProjTol) const;
  // Index in 0..3 of the 2-torsion point congruent to z within tol, or -1.
  int torsion_index(cplx z, double tol = 1e-9) const;

 private:
  cplx tau_;
  std::array<cplx, 4> torsion_;
  std::array<ProjPoint, 4> branch_;
};

// theta^{(w)}(z) = theta(z - (1 + tau)/2 - w, tau), simple zeros on w + Lambda.
cplx theta_w(const Lattice& L, cplx z, cplx w);
cplx theta_w_deriv(const Lattice& L, cplx z, cplx w);
// theta~^{(w)}(z) = theta(z - (1 + 2 tau)/2 - w, 2 tau).
cplx theta_tilde_w(const Lattice& L, cplx z, cplx w);
cplx theta_tilde_w_deriv(const Lattice& L, cplx z, cplx w);

// g^{(w)} = (i / 2 pi) theta^{(w)}' / theta^{(w)}; NearPole within kPoleGuard of w + Lambda.
cplx g_w(const Lattice& L, cplx z, cplx w);
cplx g_tilde_w(const Lattice& L, cplx z, cplx w);

// f^{(w)}(z) = exp(-2 pi i (z - w - 1/2)).
cplx automorphy_factor(cplx z, cplx w);
std::function<cplx(cplx)> automorphy_factor(cplx w);

// h(z) = e^{2 pi i z} theta~^{(1/2 - tau)}(2z) / theta~^{(1/2)}(2z).
cplx h_map(const Lattice& L, cplx z);
// [theta~^{(1/2)}(2z) : e^{2 pi i z} theta~^{(1/2 - tau)}(2z)] = [1 : h(z)].
ProjPoint pi_cover(const Lattice& L, cplx z);
inline ProjPoint pi_cover(const Lattice& L, CurvePoint p) { return pi_cover(L, p.lift); }

// The fibre {p, -p} of pi over a, ordered by (Re, Im) of the canonical lifts.
std::pair<CurvePoint, CurvePoint> invert_cover(const Lattice& L, const ProjPoint& a);

}  // namespace hecke
