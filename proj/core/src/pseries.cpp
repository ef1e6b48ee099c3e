// SPDX-License-Identifier: MIT
#include "hecke/pseries.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hecke/errors.hpp"

namespace hecke {

TruncSeries::TruncSeries(int order) : c_(static_cast<size_t>(order) + 1, cplx{}) {}

TruncSeries::TruncSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(cplx{});
}

TruncSeries TruncSeries::constant(cplx c, int order) {
  TruncSeries s(order);
  s.c_[0] = c;
  return s;
}

TruncSeries TruncSeries::monomial(cplx c, int k, int order) {
  TruncSeries s(order);
  if (k <= order) s.c_[k] = c;
  return s;
}

TruncSeries TruncSeries::linear(cplx mu, int order) {
  TruncSeries s(order);
  s.c_[0] = -mu;
  if (order >= 1) s.c_[1] = 1.0;
  return s;
}

cplx TruncSeries::eval(cplx z) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

int TruncSeries::degree(double tol) const {
  for (int k = order(); k >= 0; --k)
    if (std::abs(c_[k]) > tol) return k;
  return -1;
}

int TruncSeries::valuation(double tol) const {
  for (int k = 0; k <= order(); ++k)
    if (std::abs(c_[k]) > tol) return k;
  return order() + 1;
}

TruncSeries TruncSeries::with_order(int order) const {
  TruncSeries s(order);
  for (int k = 0; k <= std::min(order, this->order()); ++k) s.c_[k] = c_[k];
  return s;
}

TruncSeries TruncSeries::recentered(cplx mu) const {
  // Taylor shift by repeated synthetic division.
  std::vector<cplx> a = c_;
  const int n = order();
  for (int i = 0; i < n; ++i)
    for (int k = n - 1; k >= i; --k) a[k] += mu * a[k + 1];
  return TruncSeries(std::move(a));
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  if (o.order() < order()) c_.resize(o.c_.size());
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  if (o.order() < order()) c_.resize(o.c_.size());
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TruncSeries& TruncSeries::operator*=(cplx s) {
  for (auto& x : c_) x *= s;
  return *this;
}

TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
TruncSeries operator-(TruncSeries a) { return a *= -1.0; }
TruncSeries operator*(cplx s, TruncSeries a) { return a *= s; }
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b); }

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
  const int n = std::min(a.order(), b.order());
  TruncSeries r(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == cplx{}) continue;
    for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

TruncSeries invert_unit(const TruncSeries& a, double unit_tol) {
  if (std::abs(a[0]) <= unit_tol)
    throw NonUnit("constant term " + std::to_string(std::abs(a[0])));
  const int n = a.order();
  TruncSeries r(n);
  r[0] = 1.0 / a[0];
  for (int k = 1; k <= n; ++k) {
    cplx s{};
    for (int j = 1; j <= k; ++j) s += a[j] * r[k - j];
    r[k] = -s * r[0];
  }
  return r;
}

SeriesMat2::SeriesMat2(int order)
    : e_{TruncSeries(order), TruncSeries(order), TruncSeries(order), TruncSeries(order)} {}

SeriesMat2::SeriesMat2(TruncSeries a, TruncSeries b, TruncSeries c, TruncSeries d) {
  const int n = std::min({a.order(), b.order(), c.order(), d.order()});
  e_ = {a.with_order(n), b.with_order(n), c.with_order(n), d.with_order(n)};
}

SeriesMat2 SeriesMat2::identity(int order) { return constant(Mat2::Identity(), order); }

SeriesMat2 SeriesMat2::constant(const Mat2& m, int order) {
  SeriesMat2 r(order);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.at(i, j)[0] = m(i, j);
  return r;
}

SeriesMat2 SeriesMat2::Z(int order) {
  SeriesMat2 r(order);
  r.at(0, 0)[0] = 1.0;
  if (order >= 1) r.at(1, 1)[1] = 1.0;
  return r;
}

Mat2 SeriesMat2::coeff(int k) const {
  return mat2(at(0, 0)[k], at(0, 1)[k], at(1, 0)[k], at(1, 1)[k]);
}

Mat2 SeriesMat2::eval(cplx z) const {
  return mat2(at(0, 0).eval(z), at(0, 1).eval(z), at(1, 0).eval(z), at(1, 1).eval(z));
}

TruncSeries SeriesMat2::det() const { return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0); }

SeriesMat2 SeriesMat2::with_order(int order) const {
  return {e_[0].with_order(order), e_[1].with_order(order), e_[2].with_order(order),
          e_[3].with_order(order)};
}

SeriesMat2 SeriesMat2::recentered(cplx mu) const {
  return {e_[0].recentered(mu), e_[1].recentered(mu), e_[2].recentered(mu),
          e_[3].recentered(mu)};
}

int SeriesMat2::degree(double tol) const {
  int d = -1;
  for (const auto& s : e_) d = std::max(d, s.degree(tol));
  return d;
}

MatFn SeriesMat2::evaluator() const {
  return [m = *this](cplx z) { return m.eval(z); };
}

SeriesMat2 operator+(const SeriesMat2& a, const SeriesMat2& b) {
  return {a.at(0, 0) + b.at(0, 0), a.at(0, 1) + b.at(0, 1), a.at(1, 0) + b.at(1, 0),
          a.at(1, 1) + b.at(1, 1)};
}

SeriesMat2 operator-(const SeriesMat2& a, const SeriesMat2& b) {
  return {a.at(0, 0) - b.at(0, 0), a.at(0, 1) - b.at(0, 1), a.at(1, 0) - b.at(1, 0),
          a.at(1, 1) - b.at(1, 1)};
}

SeriesMat2 operator*(const SeriesMat2& a, const SeriesMat2& b) { return mul(a, b); }

SeriesMat2 mul(const SeriesMat2& a, const SeriesMat2& b) {
  return {a.at(0, 0) * b.at(0, 0) + a.at(0, 1) * b.at(1, 0),
          a.at(0, 0) * b.at(0, 1) + a.at(0, 1) * b.at(1, 1),
          a.at(1, 0) * b.at(0, 0) + a.at(1, 1) * b.at(1, 0),
          a.at(1, 0) * b.at(0, 1) + a.at(1, 1) * b.at(1, 1)};
}

SeriesMat2 invert_unit(const SeriesMat2& a, double unit_tol) {
  const TruncSeries d = a.det();
  if (std::abs(d[0]) <= unit_tol)
    throw NonUnit("constant determinant " + std::to_string(std::abs(d[0])));
  const TruncSeries di = invert_unit(d, unit_tol);
  return {di * a.at(1, 1), -(di * a.at(0, 1)), -(di * a.at(1, 0)), di * a.at(0, 0)};
}

SeriesMat2 bruhat_companion(const SeriesMat2& a, double unit_tol) {
  const int n = a.order();
  const Mat2 a0 = a.coeff(0);
  if (std::abs(a0.determinant()) <= unit_tol)
    throw NonUnit("det A(0) " + std::to_string(std::abs(a0.determinant())));
  const Mat2 a0inv = a0.inverse();

  // C = A(0)^{-1} A_1 with A_1 = (A - A(0)) / z, coefficientwise.
  std::array<std::vector<cplx>, 4> c;
  for (auto& v : c) v.assign(static_cast<size_t>(n) + 1, cplx{});
  for (int k = 0; k < n; ++k) {
    const Mat2 ck = a0inv * a.coeff(k + 1);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) c[2 * i + j][k] = ck(i, j);
  }

  // B = ((1 + z C11, z^2 C12), (C21, 1 + z C22))
  SeriesMat2 b(n);
  b.at(0, 0)[0] = 1.0;
  b.at(1, 1)[0] = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k + 1 <= n) b.at(0, 0)[k + 1] += c[0][k];
    if (k + 2 <= n) b.at(0, 1)[k + 2] += c[1][k];
    b.at(1, 0)[k] += c[2][k];
    if (k + 1 <= n) b.at(1, 1)[k + 1] += c[3][k];
  }
  return b;
}

double max_coeff_diff(const TruncSeries& a, const TruncSeries& b) {
  const int n = std::min(a.order(), b.order());
  double m = 0.0;
  for (int k = 0; k <= n; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double max_coeff_diff(const SeriesMat2& a, const SeriesMat2& b) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, max_coeff_diff(a.at(i, j), b.at(i, j)));
  return m;
}

}  // namespace hecke
