// SPDX-License-Identifier: MIT
// Truncated power series in one variable and 2x2 matrices over them.
#pragma once

#include <array>
#include <vector>

#include "hecke/types.hpp"

namespace hecke {

inline constexpr int kDefaultOrder = 8;
inline constexpr double kUnitTol = 1e-10;

// c_0 + c_1 z + ... + c_N z^N, everything above z^N discarded.
class TruncSeries {
 public:
  explicit TruncSeries(int order = kDefaultOrder);
  explicit TruncSeries(std::vector<cplx> coeffs);

  static TruncSeries constant(cplx c, int order = kDefaultOrder);
  // c * z^k
  static TruncSeries monomial(cplx c, int k, int order = kDefaultOrder);
  // z - mu
  static TruncSeries linear(cplx mu, int order = kDefaultOrder);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  cplx operator[](int k) const { return c_[k]; }
  cplx& operator[](int k) { return c_[k]; }
  const std::vector<cplx>& coeffs() const { return c_; }

  // Evaluates the truncation as a polynomial.
  cplx eval(cplx z) const;
  // Degree of the truncation, ignoring coefficients below tol; -1 if zero.
  int degree(double tol = 0.0) const;
  // Order of vanishing at 0 (first coefficient above tol); order()+1 if none.
  int valuation(double tol) const;
  TruncSeries with_order(int order) const;
  // Polynomial in (z - mu) with the same values, exact for polynomials.
  TruncSeries recentered(cplx mu) const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  TruncSeries& operator*=(cplx s);

 private:
  std::vector<cplx> c_;
};

TruncSeries operator+(TruncSeries a, const TruncSeries& b);
TruncSeries operator-(TruncSeries a, const TruncSeries& b);
TruncSeries operator-(TruncSeries a);
TruncSeries operator*(cplx s, TruncSeries a);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries invert_unit(const TruncSeries& a, double unit_tol = kUnitTol);

class SeriesMat2 {
 public:
  explicit SeriesMat2(int order = kDefaultOrder);
  SeriesMat2(TruncSeries a, TruncSeries b, TruncSeries c, TruncSeries d);

  static SeriesMat2 identity(int order = kDefaultOrder);
  static SeriesMat2 constant(const Mat2& m, int order = kDefaultOrder);
  // Z = diag(1, z)
  static SeriesMat2 Z(int order = kDefaultOrder);

  int order() const { return e_[0].order(); }
  const TruncSeries& at(int i, int j) const { return e_[2 * i + j]; }
  TruncSeries& at(int i, int j) { return e_[2 * i + j]; }

  // Coefficient matrix of z^k.
  Mat2 coeff(int k) const;
  Mat2 eval(cplx z) const;
  TruncSeries det() const;
  SeriesMat2 with_order(int order) const;
  SeriesMat2 recentered(cplx mu) const;
  int degree(double tol = 0.0) const;
  MatFn evaluator() const;

 private:
  std::array<TruncSeries, 4> e_;
};

SeriesMat2 operator+(const SeriesMat2& a, const SeriesMat2& b);
SeriesMat2 operator-(const SeriesMat2& a, const SeriesMat2& b);
SeriesMat2 operator*(const SeriesMat2& a, const SeriesMat2& b);

SeriesMat2 mul(const SeriesMat2& a, const SeriesMat2& b);
SeriesMat2 invert_unit(const SeriesMat2& a, double unit_tol = kUnitTol);

// B = 1 + z Z^{-1} A(0)^{-1} A_1 Z, where A = A(0) + z A_1; then A(0) Z B = A Z.
SeriesMat2 bruhat_companion(const SeriesMat2& a, double unit_tol = kUnitTol);

// Largest coefficient modulus difference, over all entries and orders.
double max_coeff_diff(const TruncSeries& a, const TruncSeries& b);
double max_coeff_diff(const SeriesMat2& a, const SeriesMat2& b);

}  // namespace hecke
