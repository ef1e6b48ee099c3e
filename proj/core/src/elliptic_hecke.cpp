// SPDX-License-Identifier: MIT
#include "hecke/elliptic_hecke.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

constexpr double kSpecialTol = 1e-9;
const cplx kI2pi = kI / (2.0 * kPi);  // i / 2 pi

std::string fmt_c(cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

// (i / 2 pi) d/dz theta^{(w)} and theta~^{(w)}
cplx G(const Lattice& L, cplx z, cplx w) { return kI2pi * theta_w_deriv(L, z, w); }
cplx GT(const Lattice& L, cplx z, cplx w) { return kI2pi * theta_tilde_w_deriv(L, z, w); }

const Mat2 kSwap = mat2(0.0, 1.0, 1.0, 0.0);

}  // namespace

// ---------------------------------------------------------------- bundles

cplx LineBundle::factor(cplx z) const {
  return std::exp(-2.0 * kPi * kI * double(deg) * (z - 0.5)) * expi2pi(lift);
}

std::string LineBundle::str() const { return "L(" + std::to_string(deg) + "; " + fmt_c(lift) + ")"; }

bool isomorphic(const Lattice& L, const LineBundle& a, const LineBundle& b, double tol) {
  return a.deg == b.deg && L.congruent(a.lift, b.lift, tol);
}

int EllipticBundle::degree() const {
  switch (kind) {
    case BundleKind::Decomposable: return l1.deg + l2.deg;
    case BundleKind::F2Twist: return 2 * l1.deg;
    case BundleKind::G2Twist: return 1 + 2 * l1.deg;
  }
  return 0;
}

int EllipticBundle::hecke_length() const {
  switch (kind) {
    case BundleKind::Decomposable: return std::abs(l1.deg - l2.deg);
    case BundleKind::F2Twist: return 0;
    case BundleKind::G2Twist: return 1;
  }
  return 0;
}

LineBundle EllipticBundle::det() const {
  switch (kind) {
    case BundleKind::Decomposable: return l1 * l2;
    case BundleKind::F2Twist: return l1 * l1;
    case BundleKind::G2Twist: return LineBundle{1, r} * l1 * l1;
  }
  return {};
}

EllipticBundle EllipticBundle::twisted(const LineBundle& m) const {
  EllipticBundle b = *this;
  b.l1 = l1 * m;
  if (kind == BundleKind::Decomposable) b.l2 = l2 * m;
  return b;
}

std::string EllipticBundle::str() const {
  switch (kind) {
    case BundleKind::Decomposable: return l1.str() + " + " + l2.str();
    case BundleKind::F2Twist: return "F2 x " + l1.str();
    case BundleKind::G2Twist: return "G2(" + fmt_c(r) + ") x " + l1.str();
  }
  return {};
}

bool isomorphic(const Lattice& L, const EllipticBundle& a, const EllipticBundle& b, double tol) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case BundleKind::Decomposable:
      return (isomorphic(L, a.l1, b.l1, tol) && isomorphic(L, a.l2, b.l2, tol)) ||
             (isomorphic(L, a.l1, b.l2, tol) && isomorphic(L, a.l2, b.l1, tol));
    case BundleKind::F2Twist:
      return isomorphic(L, a.l1, b.l1, tol);
    case BundleKind::G2Twist:
      // Indecomposable bundles of odd degree are determined by their determinant.
      return isomorphic(L, a.det(), b.det(), tol);
  }
  return false;
}

Mat2 automorphy(const EllipticBundle& b, cplx z) {
  switch (b.kind) {
    case BundleKind::Decomposable:
      return mat2(b.l1.factor(z), 0.0, 0.0, b.l2.factor(z));
    case BundleKind::F2Twist:
      return mat2(1.0, 1.0, 0.0, 1.0) * b.l1.factor(z);
    case BundleKind::G2Twist:
      return mat2(0.0, 1.0, automorphy_factor(z, b.r + 0.5), 0.0) * b.l1.factor(z);
  }
  return Mat2::Identity();
}

double check_equivariance(const Lattice& L, const MorphismRep& m, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-0.5, 1.5);
  const cplx tau = L.tau();
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const cplx z = U(rng) + U(rng) * tau;
    const Mat2 az = m.eval(z);
    const Mat2 lhs = m.eval(z + tau) * automorphy(m.domain, z);
    const Mat2 rhs = automorphy(m.codomain, z) * az;
    worst = std::max(worst, (lhs - rhs).norm() / (lhs.norm() + rhs.norm()));
    const Mat2 a1 = m.eval(z + 1.0);
    worst = std::max(worst, (a1 - az).norm() / (a1.norm() + az.norm()));
  }
  return worst;
}

DetZero locate_det_zero(const Lattice& L, const MorphismRep& m, int grid) {
  const cplx tau = L.tau();
  const cplx base = m.point - 0.5 - 0.5 * tau;
  auto det = [&](cplx z) { return m.eval(z).determinant(); };
  cplx best = m.point;
  double bestv = std::abs(det(best));
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const cplx z = base + (i + 0.5) / grid + (j + 0.5) / grid * tau;
      const double v = std::abs(det(z));
      if (v < bestv) bestv = v, best = z;
    }
  cplx z = best;
  for (int it = 0; it < 50; ++it) {
    const double h = 1e-6;
    const cplx d = (det(z + h) - det(z - h)) / (2.0 * h);
    if (d == cplx{}) break;
    const cplx step = det(z) / d;
    z -= step;
    if (std::abs(step) < 1e-14) break;
  }
  // Argument principle on a slightly shifted copy of the domain.
  const cplx c0 = base + 0.0137 + 0.0171 * tau;
  const cplx corners[5] = {c0, c0 + 1.0, c0 + 1.0 + tau, c0 + tau, c0};
  const int per_side = 400;
  double total = 0.0;
  cplx prev = det(c0);
  for (int s = 0; s < 4; ++s)
    for (int k = 1; k <= per_side; ++k) {
      const cplx w = corners[s] + (corners[s + 1] - corners[s]) * (double(k) / per_side);
      const cplx cur = det(w);
      total += std::arg(cur / prev);
      prev = cur;
    }
  return {z, lattice_distance(z - m.point, tau), static_cast<int>(std::lround(total / (2.0 * kPi)))};
}

// ---------------------------------------------------------------- morphisms

namespace {

MorphismRep decomposable_rep(const Lattice& L, const EllipticBundle& E, CurvePoint pt,
                             const ProjPoint& a);

// E = F_2 (x) M at p.
MorphismRep f2_rep(const Lattice& L, const EllipticBundle& E, cplx p, const ProjPoint& a) {
  const LineBundle M = E.l1;
  if (a.is_infinity()) {
    return {[L, p](cplx z) { return mat2(1.0, G(L, z, p), 0.0, theta_w(L, z, p)); },
            "F2:[1:0]", EllipticBundle::decomposable(M, LineBundle{-1, -p} * M), E, p};
  }
  const cplx lam = a.ratio() - 2.0 * g_tilde_w(L, 0.0, 0.5);
  const cplx A = p - 0.5 - L.tau(), B = p - 0.5;
  auto eval = [L, lam, A, B](cplx z) {
    const cplx tA = theta_tilde_w(L, z, A), tB = theta_tilde_w(L, z, B);
    return mat2(-(2.0 * GT(L, z, A) - tA) - lam * tA, 2.0 * GT(L, z, B) + lam * tB, -tA, tB);
  };
  return {eval, "F2:[l:1]", EllipticBundle::g2(p, LineBundle{-1, -p} * M), E, p};
}

// E = G_2(r) (x) M at p; r = p gives the table rows, other r the same family.
MorphismRep g2_rep(const Lattice& L, const EllipticBundle& E, cplx p, const ProjPoint& a) {
  const cplx r = E.r;
  const cplx m = 0.5 * (r - p);
  const ProjPoint target(a.a(), std::exp(-kPi * kI * (r - p)) * a.c());
  const auto roots = invert_cover(L, target);
  const cplx u = roots.first.lift;
  const int ti = L.torsion_index(u);
  if (ti >= 0) {
    const cplx s = L.torsion_lifts()[ti] + m;
    const cplx c = r + 0.5 - 2.0 * s;
    const cplx es = expi2pi(s);
    auto eval = [L, c, es, tau = L.tau()](cplx z) {
      const cplx t0 = theta_tilde_w(L, z, c), t1 = theta_tilde_w(L, z, c - tau);
      return mat2(t0, -2.0 * GT(L, z, c), es * t1, es * (t1 - 2.0 * GT(L, z, c - tau)));
    };
    return {eval, "G2:a_i", EllipticBundle::f2(LineBundle{0, s} * E.l1), E, p};
  }
  const cplx s1 = u + m, s2 = -u + m;
  const cplx c1 = r + 0.5 - 2.0 * s1, c2 = r + 0.5 - 2.0 * s2;
  const cplx e1 = expi2pi(s1), e2 = expi2pi(s2);
  auto eval = [L, c1, c2, e1, e2, tau = L.tau()](cplx z) {
    return mat2(theta_tilde_w(L, z, c1), theta_tilde_w(L, z, c2), e1 * theta_tilde_w(L, z, c1 - tau),
                e2 * theta_tilde_w(L, z, c2 - tau));
  };
  return {eval, "G2:generic",
          EllipticBundle::decomposable(LineBundle{0, s1} * E.l1, LineBundle{0, s2} * E.l1), E, p};
}

// Degree-delta section of L1 (x) L2^{-1} with lift sigma, nonzero at p:
// a product of theta^{(w_j)} with sum w_j = sigma.
std::vector<cplx> section_characters(const Lattice& L, int delta, cplx sigma, cplx p) {
  const cplx step = 0.37 + 0.29 * L.tau();
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<cplx> w;
    cplx sum = 0.0;
    for (int j = 1; j < delta; ++j) {
      w.push_back(p + (double(j) + 0.13 * attempt) * step / double(delta));
      sum += w.back();
    }
    w.push_back(sigma - sum);
    bool ok = true;
    for (cplx x : w) ok = ok && L.distance_to_lattice(x - p) > 0.05;
    if (ok) return w;
  }
  throw RowNotFound("no section characters avoiding the Hecke point");
}

MorphismRep decomposable_rep(const Lattice& L, const EllipticBundle& E, CurvePoint pt,
                             const ProjPoint& a) {
  const cplx p = pt.lift;
  const LineBundle L1 = E.l1, L2 = E.l2;
  const int delta = L1.deg - L2.deg;
  if (delta < 0) {
    // Swap the summands, build the row, and swap back on the codomain side.
    const EllipticBundle Es = EllipticBundle::decomposable(L2, L1);
    MorphismRep r = decomposable_rep(L, Es, pt, ProjPoint(a.c(), a.a()));
    return {[f = r.eval](cplx z) -> Mat2 { return kSwap * f(z); }, r.row + " (swapped)", r.domain, E,
            p};
  }
  const LineBundle Op{-1, -p};  // O(-p)
  if (a.is_infinity())
    return {[L, p](cplx z) { return mat2(1.0, 0.0, 0.0, theta_w(L, z, p)); }, "L1+L2:[1:0]",
            EllipticBundle::decomposable(L1, L2 * Op), E, p};
  if (a.is_zero())
    return {[L, p](cplx z) { return mat2(theta_w(L, z, p), 0.0, 0.0, 1.0); }, "L1+L2:[0:1]",
            EllipticBundle::decomposable(L1 * Op, L2), E, p};

  const cplx lam = a.ratio();
  const cplx sigma = L1.lift - L2.lift;
  if (delta >= 2 || (delta == 1 && L.distance_to_lattice(sigma - p) > kSpecialTol)) {
    const auto w = section_characters(L, delta, sigma, p);
    auto S = [L, w](cplx z) {
      cplx s = 1.0;
      for (cplx x : w) s *= theta_w(L, z, x);
      return s;
    };
    const cplx c = lam / S(p);
    return {[L, p, c, S](cplx z) { return mat2(theta_w(L, z, p), c * S(z), 0.0, 1.0); },
            delta >= 2 ? "O(D)+O:[l:1]" : "O(q)+O:[l:1]", EllipticBundle::decomposable(L1 * Op, L2),
            E, p};
  }
  if (delta == 1) {
    // L1 (x) L2^{-1} = O(p): the generic direction gives F_2.
    const cplx gp = kI2pi * theta_w_deriv(L, p, sigma);
    const cplx acoef = -gp / lam;
    return {[L, sigma, acoef](cplx z) {
              return mat2(theta_w(L, z, sigma), -G(L, z, sigma), 0.0, acoef);
            },
            "O(p)+O:[x:y]", EllipticBundle::f2(L2), E, p};
  }
  // delta == 0
  const auto [xs, ys] = L.coords(sigma);
  if (L.distance_to_lattice(sigma) < kSpecialTol) {
    // L1 = L2: sigma = k + l tau, sections e^{2 pi i l z}.
    const double l = std::round(ys);
    const cplx c = lam * expi2pi(-l * p);
    return {[L, p, c, l](cplx z) { return mat2(c * expi2pi(l * z), theta_w(L, z, p), 1.0, 0.0); },
            "L+L:[l:1]", EllipticBundle::decomposable(L2, L1 * Op), E, p};
  }
  // L1 != L2: reduce sigma by l tau so theta~^{(1/2 - tau)}(+-sigma') stays away from zero.
  const cplx tau = L.tau();
  const cplx bad = 0.5 + tau;
  double best = -1.0;
  double lbest = 0.0;
  for (double l : {std::round(ys), std::round(ys) - 1.0, std::round(ys) + 1.0}) {
    const cplx sp = sigma - l * tau;
    const double d = std::min(lattice_distance(sp - bad, 2.0 * tau), lattice_distance(-sp - bad, 2.0 * tau));
    if (d > best + 1e-12) best = d, lbest = l;
  }
  const double l = lbest;
  const cplx w = sigma - l * tau;
  const cplx q = p - w;
  // a' = Phi(p)^{-1} a with Phi = diag(e^{2 pi i l z}, 1)
  const cplx x = a.a() * expi2pi(-l * p), y = a.c();
  const cplx ca = x / theta_tilde_w(L, -w, 0.5 - tau);
  const cplx cb = y / theta_tilde_w(L, w, 0.5 - tau);
  auto eval = [L, p, w, ca, cb, l, tau](cplx z) {
    const cplx ew = expi2pi(w);
    const Mat2 base = mat2(ca * theta_tilde_w(L, z, p + w + 0.5 - tau), -ca * ew * theta_tilde_w(L, z, p + w + 0.5),
                           cb * theta_tilde_w(L, z, p - w + 0.5 - tau), -cb * theta_tilde_w(L, z, p - w + 0.5));
    Mat2 out = base;
    out.row(0) *= expi2pi(l * z);
    return out;
  };
  return {eval, "L1+L2:[x:y]", EllipticBundle::g2(q, LineBundle{-1, -q} * L2), E, p};
}

}  // namespace

namespace {

// Moves a line-bundle lift s = s' + m + l tau to s' with |x|, |y| < 1, so
// table lifts are left alone; sections change by e^{2 pi i l z}. Returns l.
double reduce_lift(const Lattice& L, LineBundle& b) {
  const auto [x, y] = L.coords(b.lift);
  const double m = std::trunc(x), l = std::trunc(y);
  b.lift -= m + l * L.tau();
  return l;
}

// Keeps domain lifts bounded along a chain and rescales the columns by
// constants (an automorphism of a split domain, a scalar otherwise). Without
// this, theta characters far from the origin scale the frames of later
// bundles by up to 1e9 and directions near [1:0] or [0:1] are misread.
MorphismRep reduce_domain(const Lattice& L, MorphismRep r) {
  EllipticBundle& F = r.domain;
  const bool split = F.kind == BundleKind::Decomposable;
  const double l1 = reduce_lift(L, F.l1);
  const double l2 = split ? reduce_lift(L, F.l2) : l1;
  auto gauged = [f = std::move(r.eval), l1, l2](cplx z) -> Mat2 {
    Mat2 m = f(z);
    if (l1 != 0.0) m.col(0) *= expi2pi(l1 * z);
    if (l2 != 0.0) m.col(1) *= expi2pi(l2 * z);
    return m;
  };
  const cplx tau = L.tau();
  double n0 = 0.0, n1 = 0.0;
  for (auto [x, y] : {std::pair{0.125, 0.375}, {0.375, 0.875}, {0.625, 0.125}, {0.875, 0.625}}) {
    const Mat2 m = gauged(x + y * tau);
    n0 += m.col(0).squaredNorm();
    n1 += m.col(1).squaredNorm();
  }
  double c0 = 1.0 / std::sqrt(0.25 * n0), c1 = 1.0 / std::sqrt(0.25 * n1);
  if (!split) c0 = c1 = 1.0 / std::sqrt(0.125 * (n0 + n1));
  if (!std::isfinite(c0) || !std::isfinite(c1)) c0 = c1 = 1.0;
  r.eval = [g = std::move(gauged), c0, c1](cplx z) -> Mat2 {
    Mat2 m = g(z);
    m.col(0) *= c0;
    m.col(1) *= c1;
    return m;
  };
  return r;
}

MorphismRep dispatch_rep(const Lattice& L, const EllipticBundle& E, CurvePoint p, const ProjPoint& a) {
  switch (E.kind) {
    case BundleKind::Decomposable: return decomposable_rep(L, E, p, a);
    case BundleKind::F2Twist: return f2_rep(L, E, p.lift, a);
    case BundleKind::G2Twist: return g2_rep(L, E, p.lift, a);
  }
  throw RowNotFound("unknown bundle kind");
}

}  // namespace

MorphismRep morphism_rep(const Lattice& L, const EllipticBundle& E, CurvePoint p, const ProjPoint& a) {
  return reduce_domain(L, dispatch_rep(L, E, p, a));
}

EllipticBundle single_hecke(const Lattice& L, const EllipticBundle& E, CurvePoint p, const ProjPoint& a) {
  return morphism_rep(L, E, p, a).domain;
}

// ---------------------------------------------------------------- lines

LineStatus line_status(const Lattice& L, const EllipticBundle& E, CurvePoint p, const ProjPoint& line) {
  if (!E.semistable()) throw UnderlyingUnstable(E.str());
  switch (E.kind) {
    case BundleKind::G2Twist:
      return {false, line};
    case BundleKind::F2Twist:
      return {line.is_infinity(), ProjPoint::infinity()};
    case BundleKind::Decomposable: {
      const cplx sigma = E.l1.lift - E.l2.lift;
      if (L.distance_to_lattice(sigma) < kSpecialTol) {
        // L + L: every line lies on a copy of L, constant in the frame diag(e^{2 pi i l z}, 1).
        const double l = std::round(L.coords(sigma).second);
        return {true, ProjPoint(line.a() * expi2pi(-l * p.lift), line.c())};
      }
      if (line.is_infinity()) return {true, ProjPoint::infinity()};
      if (line.is_zero()) return {true, ProjPoint::zero()};
      return {false, line};
    }
  }
  return {false, line};
}

bool is_good_line(const Lattice& L, const EllipticBundle& E, CurvePoint p, const ProjPoint& line) {
  return !line_status(L, E, p, line).bad;
}

namespace {

bool trivial_det(const Lattice& L, const EllipticBundle& E) {
  return isomorphic(L, E.det(), LineBundle::trivial(), 1e-7);
}

// The degree-0 subbundle of a semistable bundle witnessing a bad line with this key.
LineBundle bad_subbundle(const EllipticBundle& E, const ProjPoint& key) {
  if (E.kind == BundleKind::Decomposable && key.is_zero()) return E.l2;
  return E.l1;
}

// Columns span the maps M -> E from the degree -1 line bundle M = (-1, -n).
Mat2 hom_section(const Lattice& L, const EllipticBundle& E, cplx n, cplx z) {
  if (E.kind == BundleKind::F2Twist) {
    const cplx m = n + E.l1.lift;
    const cplx t = theta_w(L, z, m);
    return mat2(t, G(L, z, m), 0.0, t);
  }
  return mat2(theta_w(L, z, n + E.l1.lift), 0.0, 0.0, theta_w(L, z, n + E.l2.lift));
}

Eigen::RowVector2cd annihilator(const ProjPoint& l) {
  Eigen::RowVector2cd r;
  r << l.c(), -l.a();
  return r;
}

// Lift n of a degree -1 subbundle (-1, -n) of E through line a at p1 and b at p2.
cplx solve_subbundle(const Lattice& L, const EllipticBundle& E, cplx p1, cplx p2, const ProjPoint& a,
                     const ProjPoint& b) {
  const auto ra = annihilator(a), rb = annihilator(b);
  auto D = [&](cplx n) {
    const Eigen::RowVector2cd r1 = ra * hom_section(L, E, n, p1);
    const Eigen::RowVector2cd r2 = rb * hom_section(L, E, n, p2);
    return std::make_pair(r1(0) * r2(1) - r1(1) * r2(0), r1.norm() * r2.norm());
  };
  const cplx tau = L.tau();
  const int grid = 16;
  std::vector<std::pair<double, cplx>> cands;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const cplx n = (i + 0.5) / grid + (j + 0.5) / grid * tau;
      const auto [d, s] = D(n);
      if (s > 1e-300) cands.emplace_back(std::abs(d) / s, n);
    }
  std::sort(cands.begin(), cands.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (size_t c = 0; c < std::min<size_t>(cands.size(), 12); ++c) {
    cplx n = cands[c].second;
    for (int it = 0; it < 60; ++it) {
      const double h = 1e-6;
      const cplx d = D(n).first;
      const cplx dd = (D(n + h).first - D(n - h).first) / (2.0 * h);
      if (dd == cplx{}) break;
      cplx step = d / dd;
      if (std::abs(step) > 0.2) step *= 0.2 / std::abs(step);
      n -= step;
      if (std::abs(step) < 1e-14) break;
    }
    const auto [d, s] = D(n);
    if (s > 0.0 && std::abs(d) / s < 1e-10) return n;
  }
  throw NoConvergence("degree -1 subbundle through both lines not found");
}

}  // namespace

ProjPoint mss_coordinate(const Lattice& L, const EllipticBundle& E) {
  if (E.hecke_length() != 0) throw NotSemistable(E.str());
  if (!trivial_det(L, E)) throw NotSemistable("nontrivial determinant: " + E.str());
  return pi_cover(L, E.l1.lift);
}

DoubleHeckeResult double_hecke(const Lattice& L, const EllipticBundle& E, CurvePoint p1, CurvePoint p2,
                               const ProjPoint& a, const ProjPoint& b) {
  if (E.hecke_length() != 0 || !trivial_det(L, E))
    throw NotSemistable("double_hecke needs a semistable bundle with trivial determinant");
  const cplx e = L.halve_sum(p1, p2).lift;
  const LineStatus sa = line_status(L, E, p1, a), sb = line_status(L, E, p2, b);
  if (sa.bad && sb.bad && same_point(sa.key, sb.key)) return {true, {}, "u <- u (bad in the same direction)"};
  LineBundle N;
  std::string row;
  if (sa.bad) {
    N = bad_subbundle(E, sa.key) * LineBundle{0, e - p2.lift};
    row = sb.bad ? "u <- A(e-p2) (both bad)" : "u <- A(e-p2)";
  } else if (sb.bad) {
    N = bad_subbundle(E, sb.key) * LineBundle{0, e - p1.lift};
    row = "s <- B(e-p1)";
  } else {
    const cplx n = solve_subbundle(L, E, p1.lift, p2.lift, a, b);
    N = LineBundle{0, e - n};
    row = "s <- N(b)";
  }
  DoubleHeckeResult out{false, {}, row};
  if (L.torsion_index(N.lift, 1e-7) >= 0)
    out.cls = (sa.bad && sb.bad) ? EllipticBundle::decomposable(N, N) : EllipticBundle::f2(N);
  else
    out.cls = EllipticBundle::decomposable(N, N.inverse());
  return out;
}

DoubleHeckeResult double_hecke_chained(const Lattice& L, const EllipticBundle& E, CurvePoint p1,
                                       CurvePoint p2, const ProjPoint& a, const ProjPoint& b) {
  const MorphismRep a1 = morphism_rep(L, E, p1, a);
  const ProjPoint bl(Vec2(a1.eval(p2.lift).inverse() * b.vec()));
  const MorphismRep a2 = morphism_rep(L, a1.domain, p2, bl);
  const cplx e = L.halve_sum(p1, p2).lift;
  const EllipticBundle E2e = a2.domain.twisted(LineBundle{1, e});
  const std::string row = a1.row + " then " + a2.row;
  if (E2e.hecke_length() != 0) return {true, {}, row};
  return {false, E2e, row};
}

bool same_s_class(const Lattice& L, const DoubleHeckeResult& x, const DoubleHeckeResult& y, double tol) {
  if (x.unstable || y.unstable) return x.unstable == y.unstable;
  return chordal(mss_coordinate(L, x.cls), mss_coordinate(L, y.cls)) < tol;
}

// ---------------------------------------------------------------- sequences

MatFn EllipticChain::composed(size_t i) const {
  std::vector<MatFn> fs;
  for (size_t k = 0; k < i && k < alphas.size(); ++k) fs.push_back(alphas[k].eval);
  return [fs](cplx z) {
    Mat2 m = Mat2::Identity();
    for (const auto& f : fs) m = m * f(z);
    return m;
  };
}

EllipticChain build_chain(const Lattice& L, const EllipticBundle& E, const std::vector<EllipticStep>& steps) {
  EllipticChain ch;
  ch.bundles.push_back(E);
  for (size_t i = 0; i < steps.size(); ++i) {
    ch.alphas.push_back(morphism_rep(L, ch.bundles.back(), steps[i].point, steps[i].direction));
    ch.bundles.push_back(ch.alphas.back().domain);
    ch.global_dirs.push_back(eta_at(ch.composed(i + 1), steps[i].point.lift));
  }
  return ch;
}

namespace {

void require_stable_base(const Lattice& L, const MarkedSequence& s) {
  const EllipticBundle& E = s.base;
  bool ok = E.hecke_length() == 0 && trivial_det(L, E);
  if (ok && E.kind == BundleKind::Decomposable) ok = L.torsion_index(E.l1.lift, 1e-7) < 0;
  if (ok) ok = is_good_line(L, E, s.q, s.ell_q);
  if (!ok) throw NotSemistable("(E, l_q) is not parabolically stable: " + E.str());
}

}  // namespace

std::vector<ProjPoint> h_total(const Lattice& L, const MarkedSequence& s) {
  require_stable_base(L, s);
  std::vector<ProjPoint> h{mss_coordinate(L, s.base)};
  const EllipticChain ch = build_chain(L, s.base, s.steps);
  for (size_t i = 0; i < s.steps.size(); ++i) {
    const auto r = double_hecke(L, s.base, s.q, s.steps[i].point, s.ell_q, ch.global_dirs[i]);
    if (r.unstable) throw NotSemistable("internal: unstable double modification with a good first line");
    h.push_back(mss_coordinate(L, r.cls));
  }
  return h;
}

MarkedSequence construct_sequence(const Lattice& L, const std::vector<ProjPoint>& tuple, CurvePoint q,
                                  const std::vector<CurvePoint>& points) {
  if (tuple.size() != points.size() + 1) throw ConfigError("tuple needs n + 1 entries");
  MarkedSequence s;
  s.q = q;
  const auto base = invert_cover(L, tuple[0]);
  const int bi = L.torsion_index(base.first.lift);
  if (bi >= 0) {
    s.base = EllipticBundle::f2(LineBundle{0, L.torsion_lifts()[bi]});
    s.ell_q = ProjPoint::zero();
  } else {
    const cplx u = base.first.lift;
    s.base = EllipticBundle::decomposable(LineBundle{0, u}, LineBundle{0, -u});
    s.ell_q = ProjPoint(1.0, 1.0);
  }
  const auto rq = annihilator(s.ell_q);
  std::vector<ProjPoint> global;
  for (size_t i = 0; i < points.size(); ++i) {
    const cplx e = L.halve_sum(q, points[i]).lift;
    const auto roots = invert_cover(L, tuple[i + 1]);
    std::optional<ProjPoint> d;
    for (cplx c : {roots.first.lift, roots.second.lift}) {
      const cplx n = e - c;
      const Eigen::RowVector2cd r = rq * hom_section(L, s.base, n, q.lift);
      const Vec2 v = r.norm() > 1e-300 ? Vec2(r(1), -r(0)) : Vec2(1.0, 0.0);
      const Vec2 w = hom_section(L, s.base, n, points[i].lift) * v;
      if (w.norm() > 1e-8 * v.norm()) {
        d = ProjPoint(w);
        break;
      }
    }
    if (!d) throw NoConvergence("no direction realises the requested coordinate");
    global.push_back(*d);
  }
  // Transport the E-frame directions into the frame of each intermediate bundle.
  EllipticChain ch;
  ch.bundles.push_back(s.base);
  for (size_t i = 0; i < points.size(); ++i) {
    const Mat2 P = ch.composed(i)(points[i].lift);
    const ProjPoint local(Vec2(P.inverse() * global[i].vec()));
    s.steps.push_back({points[i], local});
    ch.alphas.push_back(morphism_rep(L, ch.bundles.back(), points[i], local));
    ch.bundles.push_back(ch.alphas.back().domain);
  }
  return s;
}

std::array<ProjPoint, 3> f_embedding(const Lattice& L, CurvePoint p, CurvePoint q, CurvePoint p1,
                                     CurvePoint p2) {
  const cplx e1 = L.halve_sum(q, p1).lift, e2 = L.halve_sum(q, p2).lift;
  return {pi_cover(L, p.lift - e1), pi_cover(L, p.lift - p1.lift),
          pi_cover(L, p.lift - p2.lift + e2 - e1)};
}

CurveDistance distance_to_f(const Lattice& L, const std::array<ProjPoint, 3>& t, CurvePoint q,
                            CurvePoint p1, CurvePoint p2) {
  auto residual = [&](cplx p) {
    const auto f = f_embedding(L, CurvePoint{p}, q, p1, p2);
    Eigen::Matrix<double, 6, 1> r;
    for (int k = 0; k < 3; ++k) {
      const cplx v = (t[k].a() * f[k].c() - t[k].c() * f[k].a()) / (t[k].vec().norm() * f[k].vec().norm());
      r(2 * k) = v.real();
      r(2 * k + 1) = v.imag();
    }
    return r;
  };
  auto maxdist = [&](cplx p) {
    const auto f = f_embedding(L, CurvePoint{p}, q, p1, p2);
    double m = 0.0;
    for (int k = 0; k < 3; ++k) m = std::max(m, chordal(t[k], f[k]));
    return m;
  };
  const cplx tau = L.tau();
  std::vector<std::pair<double, cplx>> samples;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const cplx p = (i + 0.5) / 8.0 + (j + 0.5) / 8.0 * tau;
      samples.emplace_back(maxdist(p), p);
    }
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  CurveDistance best{samples.front().first, L.point(samples.front().second)};
  for (int s = 0; s < 4; ++s) {
    cplx p = samples[s].second;
    double mu = 1e-3;
    auto r = residual(p);
    for (int it = 0; it < 80; ++it) {
      const double h = 1e-7;
      Eigen::Matrix<double, 6, 2> J;
      J.col(0) = (residual(p + h) - residual(p - h)) / (2.0 * h);
      J.col(1) = (residual(p + kI * h) - residual(p - kI * h)) / (2.0 * h);
      const Eigen::Matrix2d A = J.transpose() * J + mu * Eigen::Matrix2d::Identity();
      const Eigen::Vector2d delta = A.ldlt().solve(-J.transpose() * r);
      const cplx pn = p + cplx(delta(0), delta(1));
      const auto rn = residual(pn);
      if (rn.squaredNorm() < r.squaredNorm()) {
        p = pn;
        r = rn;
        mu = std::max(mu * 0.3, 1e-12);
        if (delta.norm() < 1e-14) break;
      } else {
        mu *= 10.0;
        if (mu > 1e8) break;
      }
    }
    const double d = maxdist(p);
    if (d < best.distance) best = {d, L.point(p)};
  }
  return best;
}

bool membership_Hp(const Lattice& L, const MarkedSequence& s) {
  const size_t n = s.steps.size();
  if (n >= 3) throw Unsupported("exact membership is known for n <= 2 only");
  if (n <= 1) return true;
  const auto h = h_total(L, s);
  const auto d = distance_to_f(L, {h[0], h[1], h[2]}, s.q, s.steps[0].point, s.steps[1].point);
  return d.distance >= kCurveTol;
}

bool membership_Hp_tuple(const Lattice& L, const std::vector<ProjPoint>& tuple, CurvePoint q,
                         const std::vector<CurvePoint>& points) {
  return membership_Hp(L, construct_sequence(L, tuple, q, points));
}

bool terminal_semistable(const Lattice& L, const MarkedSequence& s) {
  return build_chain(L, s.base, s.steps).bundles.back().hecke_length() == 0;
}

}  // namespace hecke
