// SPDX-License-Identifier: MIT
#include "hecke/elliptic_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

// Sum over |n| <= N for an argument already in the strip |Im z| <= Im T / 2.
ThetaValue theta_series(cplx z, cplx T) {
  const double imT = T.imag();
  const int N = static_cast<int>(std::ceil(std::sqrt(36.0 / (kPi * imT))) +
                                 std::abs(z.imag()) / imT + 4.0);
  cplx v = 1.0, d = 0.0;
  for (int n = 1; n <= N; ++n) {
    const cplx q = std::exp(kPi * kI * (double(n) * n) * T);
    const cplx ep = std::exp(2.0 * kPi * kI * double(n) * z);
    const cplx em = std::exp(-2.0 * kPi * kI * double(n) * z);
    v += q * (ep + em);
    d += q * (2.0 * kPi * kI * double(n)) * (ep - em);
  }
  return {v, d};
}

}  // namespace

ThetaValue theta_full(cplx z, cplx T) {
  const double y = z.imag() / T.imag();
  const double k = std::round(y);
  cplx zr = z - k * T;
  zr -= std::round(zr.real());
  const ThetaValue t = theta_series(zr, T);
  if (k == 0.0) return t;
  // theta(z' + kT) = exp(-pi i (k^2 T + 2 k z')) theta(z')
  const cplx e = std::exp(-kPi * kI * (k * k * T + 2.0 * k * zr));
  return {e * t.value, e * (t.deriv - 2.0 * kPi * kI * k * t.value)};
}

cplx theta(cplx z, cplx T) { return theta_full(z, T).value; }

double lattice_distance(cplx z, cplx T) {
  const double y = z.imag() / T.imag();
  const double x = z.real() - y * T.real();
  const double m0 = std::floor(x), n0 = std::floor(y);
  double best = std::abs(z);
  for (int dm = -1; dm <= 2; ++dm)
    for (int dn = -1; dn <= 2; ++dn)
      best = std::min(best, std::abs(z - (m0 + dm) - (n0 + dn) * T));
  return best;
}

Lattice::Lattice(cplx tau) : tau_(tau) {
  if (!(tau.imag() > 0.0)) throw ConfigError("lattice parameter needs Im tau > 0");
  torsion_ = {cplx(0.0), cplx(0.5), 0.5 * tau, 0.5 + 0.5 * tau};
  for (int i = 0; i < 4; ++i) branch_[i] = pi_cover(*this, torsion_[i]);
}

std::pair<double, double> Lattice::coords(cplx z) const {
  const double y = z.imag() / tau_.imag();
  return {z.real() - y * tau_.real(), y};
}

cplx Lattice::reduce(cplx z) const {
  auto [x, y] = coords(z);
  double fy = y - std::floor(y);
  double fx = x - std::floor(x);
  // Snap values that round to the upper edge back into [0, 1).
  if (fy >= 1.0 - 1e-15) fy = 0.0;
  if (fx >= 1.0 - 1e-15) fx = 0.0;
  return fx + fy * tau_;
}

int Lattice::branch_index(const ProjPoint& a, double tol) const {
  for (int i = 0; i < 4; ++i)
    if (chordal(a, branch_[i]) < tol) return i;
  return -1;
}

int Lattice::torsion_index(cplx z, double tol) const {
  for (int i = 0; i < 4; ++i)
    if (congruent(z, torsion_[i], tol)) return i;
  return -1;
}

cplx theta_w(const Lattice& L, cplx z, cplx w) {
  return theta(z - 0.5 * (1.0 + L.tau()) - w, L.tau());
}

cplx theta_w_deriv(const Lattice& L, cplx z, cplx w) {
  return theta_full(z - 0.5 * (1.0 + L.tau()) - w, L.tau()).deriv;
}

cplx theta_tilde_w(const Lattice& L, cplx z, cplx w) {
  return theta(z - 0.5 * (1.0 + 2.0 * L.tau()) - w, 2.0 * L.tau());
}

cplx theta_tilde_w_deriv(const Lattice& L, cplx z, cplx w) {
  return theta_full(z - 0.5 * (1.0 + 2.0 * L.tau()) - w, 2.0 * L.tau()).deriv;
}

cplx g_w(const Lattice& L, cplx z, cplx w) {
  if (lattice_distance(z - w, L.tau()) < kPoleGuard) throw NearPole("g^{(w)} at a zero of theta^{(w)}");
  const ThetaValue t = theta_full(z - 0.5 * (1.0 + L.tau()) - w, L.tau());
  return kI / (2.0 * kPi) * t.deriv / t.value;
}

cplx g_tilde_w(const Lattice& L, cplx z, cplx w) {
  const cplx T = 2.0 * L.tau();
  if (lattice_distance(z - w, T) < kPoleGuard) throw NearPole("g~^{(w)} at a zero of theta~^{(w)}");
  const ThetaValue t = theta_full(z - 0.5 * (1.0 + T) - w, T);
  return kI / (2.0 * kPi) * t.deriv / t.value;
}

cplx automorphy_factor(cplx z, cplx w) { return std::exp(-2.0 * kPi * kI * (z - w - 0.5)); }

std::function<cplx(cplx)> automorphy_factor(cplx w) {
  return [w](cplx z) { return automorphy_factor(z, w); };
}

namespace {

struct CoverPair {
  cplx P, Q;    // pi = [P : Q]
  cplx dP, dQ;  // d/dz
};

CoverPair cover_pair(const Lattice& L, cplx z) {
  const cplx T = 2.0 * L.tau();
  const cplx shift = 0.5 * (1.0 + T);
  const ThetaValue p = theta_full(2.0 * z - shift - 0.5, T);
  const ThetaValue q = theta_full(2.0 * z - shift - (0.5 - L.tau()), T);
  const cplx e = expi2pi(z);
  return {p.value, e * q.value, 2.0 * p.deriv, e * (2.0 * kPi * kI * q.value + 2.0 * q.deriv)};
}

}  // namespace

cplx h_map(const Lattice& L, cplx z) {
  const CoverPair c = cover_pair(L, z);
  return c.Q / c.P;
}

ProjPoint pi_cover(const Lattice& L, cplx z) {
  const CoverPair c = cover_pair(L, z);
  return {c.P, c.Q};
}

std::pair<CurvePoint, CurvePoint> invert_cover(const Lattice& L, const ProjPoint& a) {
  const int bi = L.branch_index(a);
  if (bi >= 0) {
    const CurvePoint t{L.torsion_lifts()[bi]};
    return {t, t};
  }
  const cplx tau = L.tau();
  // Seed Newton from the grid points closest to the target.
  constexpr int kGrid = 24;
  std::vector<std::pair<double, cplx>> starts;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const cplx z = (i + 0.5) / kGrid + (j + 0.5) / kGrid * tau;
      starts.emplace_back(chordal(pi_cover(L, z), a), z);
    }
  std::partial_sort(starts.begin(), starts.begin() + 16, starts.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
  for (int s = 0; s < 16; ++s) {
    cplx z = starts[s].second;
    bool done = false;
    for (int it = 0; it < 100; ++it) {
      const CoverPair c = cover_pair(L, z);
      // Newton on the quasi-elliptic ratio; the sections themselves grow too fast.
      const bool flip = std::abs(a.a()) > std::abs(a.c());
      const cplx num = flip ? c.Q : c.P, den = flip ? c.P : c.Q;
      const cplx dnum = flip ? c.dQ : c.dP, dden = flip ? c.dP : c.dQ;
      if (den == cplx{}) break;
      const cplx F = num / den - (flip ? a.c() / a.a() : a.a() / a.c());
      const cplx dF = (dnum * den - num * dden) / (den * den);
      if (dF == cplx{}) break;
      cplx step = F / dF;
      if (std::abs(step) > 0.25) step *= 0.25 / std::abs(step);
      z -= step;
      if (std::abs(step) < 1e-13) {
        done = true;
        break;
      }
    }
    if (!done && chordal(pi_cover(L, z), a) > 1e-10) continue;
    if (chordal(pi_cover(L, z), a) > 1e-8) continue;
    CurvePoint p = L.point(z), q = L.point(-z);
    auto key = [](cplx w) { return std::make_pair(w.real(), w.imag()); };
    if (key(q.lift) < key(p.lift)) std::swap(p, q);
    return {p, q};
  }
  throw NoConvergence("invert_cover: no start converged for " + a.str());
}

}  // namespace hecke
