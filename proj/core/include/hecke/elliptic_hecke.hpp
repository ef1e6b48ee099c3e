// SPDX-License-Identifier: MIT
// Hecke modifications of rank-2 bundles on an elliptic curve: Atiyah
// classes, theta-valued morphism representatives, single and double
// modifications, and the moduli map h = (h_0, ..., h_n).
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hecke/elliptic_kernel.hpp"
#include "hecke/grassmannian.hpp"

namespace hecke {

// Line bundle with factor of automorphy e^{-2 pi i d (z - 1/2)} e^{2 pi i s}.
// The lift s is kept unreduced because it fixes the factor exactly; O(p) is
// (1, p~) and a degree-0 bundle (0, s) corresponds to the point [s] of X.
struct LineBundle {
  int deg = 0;
  cplx lift{};

  static LineBundle trivial() { return {}; }
  static LineBundle of_point(CurvePoint p) { return {1, p.lift}; }
  static LineBundle degree_zero(cplx s) { return {0, s}; }

  cplx factor(cplx z) const;
  LineBundle inverse() const { return {-deg, -lift}; }
  LineBundle operator*(const LineBundle& o) const { return {deg + o.deg, lift + o.lift}; }
  std::string str() const;
};

bool isomorphic(const Lattice& L, const LineBundle& a, const LineBundle& b, double tol = 1e-9);

enum class BundleKind { Decomposable, F2Twist, G2Twist };

// Decomposable(L1, L2) = L1 + L2; F2Twist(L) = F_2 (x) L; G2Twist(r, L) = G_2(r) (x) L.
struct EllipticBundle {
  BundleKind kind = BundleKind::Decomposable;
  LineBundle l1, l2;  // l2 only for Decomposable
  cplx r{};           // point lift for G2Twist

  static EllipticBundle decomposable(LineBundle a, LineBundle b) {
    return {BundleKind::Decomposable, a, b, {}};
  }
  static EllipticBundle f2(LineBundle a = {}) { return {BundleKind::F2Twist, a, {}, {}}; }
  static EllipticBundle g2(cplx point, LineBundle a = {}) {
    return {BundleKind::G2Twist, a, {}, point};
  }

  int degree() const;
  int hecke_length() const;
  bool semistable() const { return hecke_length() == 0 || kind == BundleKind::G2Twist; }
  LineBundle det() const;
  EllipticBundle twisted(const LineBundle& m) const;
  std::string str() const;
};

// Same Atiyah class (isomorphic bundles).
bool isomorphic(const Lattice& L, const EllipticBundle& a, const EllipticBundle& b, double tol = 1e-9);

Mat2 automorphy(const EllipticBundle& b, cplx z);

// alpha : F -> E with alpha(z + tau) f_F(z) = f_E(z) alpha(z) and alpha(z + 1) = alpha(z).
struct MorphismRep {
  MatFn eval;
  std::string row;
  EllipticBundle domain;    // F, the modified bundle
  EllipticBundle codomain;  // E
  cplx point{};             // lift of the Hecke point
};

// Relative residual of the two cocycle relations at `samples` seeded points.
double check_equivariance(const Lattice& L, const MorphismRep& m, int samples = 20,
                          std::uint64_t seed = 0x5eed);

struct DetZero {
  cplx location;   // located zero of det alpha in the shifted fundamental domain
  double distance; // |location - point| modulo the lattice
  int winding;     // zero count inside the domain boundary
};
// Grid scan of |det alpha| over a fundamental domain centred on the Hecke point,
// Newton refinement, and an argument-principle count.
DetZero locate_det_zero(const Lattice& L, const MorphismRep& m, int grid = 48);

MorphismRep morphism_rep(const Lattice& L, const EllipticBundle& E, CurvePoint p, const ProjPoint& a);
EllipticBundle single_hecke(const Lattice& L, const EllipticBundle& E, CurvePoint p, const ProjPoint& a);

// Bad-line data of a semistable bundle. `key` identifies the witnessing
// degree-maximal subbundle: two bad lines are bad in the same direction iff
// their keys coincide.
struct LineStatus {
  bool bad = false;
  ProjPoint key;
};
LineStatus line_status(const Lattice& L, const EllipticBundle& E, CurvePoint p, const ProjPoint& line);
bool is_good_line(const Lattice& L, const EllipticBundle& E, CurvePoint p, const ProjPoint& line);

ProjPoint mss_coordinate(const Lattice& L, const EllipticBundle& E);

struct DoubleHeckeResult {
  bool unstable = false;
  EllipticBundle cls;  // E_2 (x) O(e) when semistable
  std::string row;
};
// Directions a, b are in E's frame (the h-coordinates of the two-step sequence).
DoubleHeckeResult double_hecke(const Lattice& L, const EllipticBundle& E, CurvePoint p1,
                               CurvePoint p2, const ProjPoint& a, const ProjPoint& b);
// Same classification by two explicit morphisms and frame transport at p2.
DoubleHeckeResult double_hecke_chained(const Lattice& L, const EllipticBundle& E, CurvePoint p1,
                                       CurvePoint p2, const ProjPoint& a, const ProjPoint& b);
bool same_s_class(const Lattice& L, const DoubleHeckeResult& x, const DoubleHeckeResult& y,
                  double tol = 1e-7);

// Steps carry directions in the frame of the bundle they modify.
struct EllipticStep {
  CurvePoint point;
  ProjPoint direction;
};

struct EllipticChain {
  std::vector<MorphismRep> alphas;
  std::vector<EllipticBundle> bundles;  // E_0 .. E_n
  std::vector<ProjPoint> global_dirs;   // eta of the composed evaluators
  MatFn composed(size_t i) const;       // alpha_1 ... alpha_i
};
EllipticChain build_chain(const Lattice& L, const EllipticBundle& E, const std::vector<EllipticStep>& steps);

// (E, l_q) together with a sequence at p_1..p_n.
struct MarkedSequence {
  EllipticBundle base;
  CurvePoint q;
  ProjPoint ell_q;
  std::vector<EllipticStep> steps;
};

std::vector<ProjPoint> h_total(const Lattice& L, const MarkedSequence& s);

// A marked sequence whose h_total is the given (n+1)-tuple.
MarkedSequence construct_sequence(const Lattice& L, const std::vector<ProjPoint>& tuple, CurvePoint q,
                                  const std::vector<CurvePoint>& points);

std::array<ProjPoint, 3> f_embedding(const Lattice& L, CurvePoint p, CurvePoint q, CurvePoint p1,
                                     CurvePoint p2);

inline constexpr double kCurveTol = 1e-6;

struct CurveDistance {
  double distance;  // max chordal distance over the three coordinates
  CurvePoint nearest;
};
CurveDistance distance_to_f(const Lattice& L, const std::array<ProjPoint, 3>& tuple, CurvePoint q,
                            CurvePoint p1, CurvePoint p2);

bool membership_Hp(const Lattice& L, const MarkedSequence& s);
bool membership_Hp_tuple(const Lattice& L, const std::vector<ProjPoint>& tuple, CurvePoint q,
                         const std::vector<CurvePoint>& points);
// Terminal bundle of the explicit chain has Hecke length 0.
bool terminal_semistable(const Lattice& L, const MarkedSequence& s);

}  // namespace hecke
