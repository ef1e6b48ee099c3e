// SPDX-License-Identifier: MIT
// Points of CP^1 and the direction map eta on the Bruhat cell Gr(1).
#pragma once

#include <string>

#include "hecke/pseries.hpp"
#include "hecke/types.hpp"

namespace hecke {

inline constexpr double kProjTol = 1e-8;
inline constexpr double kRankTol = 1e-8;
inline constexpr double kNormTol = 1e-14;

// [a:c], stored with the larger-modulus coordinate equal to 1.
class ProjPoint {
 public:
  ProjPoint() : a_(1.0), c_(0.0) {}
  ProjPoint(cplx a, cplx c);
  explicit ProjPoint(const Vec2& v) : ProjPoint(v(0), v(1)) {}

  static ProjPoint infinity() { return {1.0, 0.0}; }  // [1:0]
  static ProjPoint zero() { return {0.0, 1.0}; }      // [0:1]
  static ProjPoint affine(cplx lambda) { return {lambda, 1.0}; }  // [lambda:1]

  cplx a() const { return a_; }
  cplx c() const { return c_; }
  Vec2 vec() const { return Vec2(a_, c_); }
  // a/c; infinite for [1:0].
  cplx ratio() const { return a_ / c_; }
  // c/a; infinite for [0:1].
  cplx slope() const { return c_ / a_; }
  // The table's [1:0] test: |c|/|a| < tol.
  bool is_infinity(double tol = kProjTol) const { return std::abs(c_) < tol * std::abs(a_); }
  bool is_zero(double tol = kProjTol) const { return std::abs(a_) < tol * std::abs(c_); }
  bool is_generic(double tol = kProjTol) const { return !is_infinity(tol) && !is_zero(tol); }
  // Image under a linear map.
  ProjPoint apply(const Mat2& m) const { return ProjPoint(Vec2(m * vec())); }

  std::string str() const;

 private:
  cplx a_, c_;
};

double chordal(const ProjPoint& p, const ProjPoint& q);
bool same_point(const ProjPoint& p, const ProjPoint& q, double tol = kProjTol);

struct SingularValues2 {
  double s1;  // largest
  double s2;
};
SingularValues2 singular_values(const Mat2& m);

// Column space of a rank-1 matrix, read off its largest column.
ProjPoint column_space(const Mat2& m);

ProjPoint eta_at(const MatFn& m, cplx mu);
ProjPoint eta_at(const SeriesMat2& m, cplx mu);

// True iff det M vanishes to exactly first order at 0 and M(0) has rank 1.
bool in_bruhat_cell(const SeriesMat2& m);

// Projective distance between eta(A Z) and eta(A Z B) at 0.
double eta_invariance_check(const SeriesMat2& a, const SeriesMat2& b);

// A Z with eta(A Z) = p and A a unit.
SeriesMat2 surjectivity_witness(const ProjPoint& p, int order = kDefaultOrder);

}  // namespace hecke
