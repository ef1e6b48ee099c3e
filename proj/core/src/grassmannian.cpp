// SPDX-License-Identifier: MIT
#include "hecke/grassmannian.hpp"

#include <cmath>
#include <cstdio>

#include "hecke/errors.hpp"

namespace hecke {

ProjPoint::ProjPoint(cplx a, cplx c) {
  const double na = std::abs(a), nc = std::abs(c);
  if (!(na > 0.0 || nc > 0.0) || !std::isfinite(na) || !std::isfinite(nc))
    throw NotInCell("degenerate homogeneous coordinates");
  if (na >= nc) {
    a_ = 1.0;
    c_ = c / a;
  } else {
    a_ = a / c;
    c_ = 1.0;
  }
}

std::string ProjPoint::str() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "[%.6g%+.6gi : %.6g%+.6gi]", a_.real(), a_.imag(), c_.real(),
                c_.imag());
  return buf;
}

double chordal(const ProjPoint& p, const ProjPoint& q) {
  const double num = std::abs(p.a() * q.c() - q.a() * p.c());
  return num / (p.vec().norm() * q.vec().norm());
}

bool same_point(const ProjPoint& p, const ProjPoint& q, double tol) {
  return chordal(p, q) < tol;
}

SingularValues2 singular_values(const Mat2& m) {
  const double s = m.squaredNorm();
  const double d = std::abs(m.determinant());
  const double disc = std::sqrt(std::max(0.0, s * s - 4.0 * d * d));
  const double s1 = std::sqrt(0.5 * (s + disc));
  return {s1, s1 > 0.0 ? d / s1 : 0.0};
}

ProjPoint column_space(const Mat2& m) {
  const Vec2 c0 = m.col(0), c1 = m.col(1);
  return ProjPoint(c0.norm() >= c1.norm() ? c0 : c1);
}

ProjPoint eta_at(const MatFn& m, cplx mu) {
  const Mat2 v = m(mu);
  const auto sv = singular_values(v);
  if (!(sv.s1 > kNormTol)) throw NotInCell("matrix vanishes at the point");
  if (sv.s2 / sv.s1 >= kRankTol) throw NotInCell("matrix is invertible at the point");
  return column_space(v);
}

ProjPoint eta_at(const SeriesMat2& m, cplx mu) { return eta_at(m.evaluator(), mu); }

bool in_bruhat_cell(const SeriesMat2& m) {
  if (m.order() < 2) return false;
  const Mat2 m0 = m.coeff(0);
  const auto sv = singular_values(m0);
  if (!(sv.s1 > kNormTol) || sv.s2 / sv.s1 >= kRankTol) return false;
  double scale = 0.0;
  for (int k = 0; k <= m.order(); ++k) scale = std::max(scale, m.coeff(k).norm());
  const TruncSeries d = m.det();
  const double tol = 1e-12 * scale * scale;
  return std::abs(d[0]) <= tol && std::abs(d[1]) > tol;
}

double eta_invariance_check(const SeriesMat2& a, const SeriesMat2& b) {
  const int n = std::min(a.order(), b.order());
  invert_unit(a);
  invert_unit(b);
  const SeriesMat2 az = a * SeriesMat2::Z(n);
  const SeriesMat2 azb = az * b;
  return chordal(eta_at(az, 0.0), eta_at(azb, 0.0));
}

SeriesMat2 surjectivity_witness(const ProjPoint& p, int order) {
  const Mat2 a = p.is_zero(0.5) ? mat2(p.a(), 1.0, p.c(), 0.0) : mat2(p.a(), 0.0, p.c(), 1.0);
  return SeriesMat2::constant(a, order) * SeriesMat2::Z(order);
}

}  // namespace hecke
