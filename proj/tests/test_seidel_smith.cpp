// SPDX-License-Identifier: MIT
// Slodowy slice, eigenvalue map, cokernel action and the left-eigenvector embedding.
#include <doctest.h>

#include <algorithm>

#include "testing.hpp"

using namespace hecke;
using hecke::testing::Rng;

namespace {

// Characteristic polynomial by Faddeev-LeVerrier, monic, highest degree first.
std::vector<cplx> charpoly(const MatX& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<cplx> c(n + 1);
  c[0] = 1.0;
  MatX m = MatX::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[k - 1] * MatX::Identity(n, n);
    c[k] = -(a * m).trace() / double(k);
  }
  return c;
}

// Durand-Kerner roots of a monic polynomial.
std::vector<cplx> roots(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::pow(cplx(0.4, 0.9), i);
  auto p = [&](cplx x) {
    cplx v = 0.0;
    for (cplx k : c) v = v * x + k;
    return v;
  };
  for (int it = 0; it < 500; ++it)
    for (int i = 0; i < n; ++i) {
      cplx d = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) d *= z[i] - z[j];
      z[i] -= p(z[i]) / d;
    }
  return z;
}

// Greedy matching distance between two multisets.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  double worst = 0.0;
  for (cplx x : a) {
    auto it = std::min_element(b.begin(), b.end(), [x](cplx u, cplx v) { return std::abs(u - x) < std::abs(v - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

SlodowyMatrix random_slice(Rng& r, int m) {
  SlodowyMatrix s{m, {}};
  for (int i = 0; i < m; ++i) s.blocks.push_back(mat2(r.gaussian(), r.gaussian(), r.gaussian(), r.gaussian()));
  return s;
}

RationalSequence random_sequence(Rng& r, int m) {
  RationalSequence seq{{0, 0}, {}};
  for (int i = 0; i < 2 * m; ++i) seq.steps.push_back({r.gaussian(), r.proj()});
  return seq;
}

}  // namespace

TEST_SUITE("seidel-smith") {

TEST_CASE("slice shape roundtrip") {
  Rng r(41);
  for (int m = 1; m <= 3; ++m) {
    const auto s = random_slice(r, m);
    const MatX a = s.dense();
    CHECK(slice_defect(a) == 0.0);
    const auto back = SlodowyMatrix::from_dense(a);
    for (int i = 0; i < m; ++i) CHECK((back.blocks[i] - s.blocks[i]).norm() == 0.0);
  }
}

TEST_CASE("chi for m = 1") {
  const cplx m1(0.3, 1.0), m2(-1.2, 0.4), l2(0.8, -0.1);
  MatX d(2, 2);
  d << m1, 0.0, 0.0, m2;
  CHECK(multiset_distance(chi(d), {m1, m2}) < 1e-14);
  MatX b(2, 2);
  b << m2, -l2, 0.0, m1;
  CHECK(multiset_distance(chi(b), {m1, m2}) < 1e-12);
}

TEST_CASE("chi against Faddeev-LeVerrier and Durand-Kerner") {
  Rng r(42);
  for (int m = 2; m <= 3; ++m)
    for (int t = 0; t < 30; ++t) {
      const MatX a = random_slice(r, m).dense();
      CHECK(multiset_distance(chi(a), roots(charpoly(a))) < 1e-8);
    }
}

TEST_CASE("kamnitzer closed forms for m = 1") {
  Rng r(43);
  for (int t = 0; t < 50; ++t) {
    const cplx l1 = r.gaussian(), l2 = r.gaussian(), m1 = r.gaussian(), m2 = r.gaussian();
    const auto sa = sequence_from_local({0, 0}, {m1, m2}, {ProjPoint(l1, 1.0), ProjPoint(l2, 1.0)});
    const auto sb = sequence_from_local({0, 0}, {m1, m2}, {ProjPoint::infinity(), ProjPoint(l2, 1.0)});
    const MatX ea = Mat2(mat2(m1 - l1 * l2, l1 * (m2 - m1 + l1 * l2), -l2, m2 + l1 * l2));
    const MatX eb = Mat2(mat2(m2, -l2, 0.0, m1));
    CHECK((kamnitzer(sa) - ea).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((kamnitzer(sb) - eb).cwiseAbs().maxCoeff() < 1e-10);
  }
  const auto s0 = sequence_from_local({0, 0}, {0.5, -0.5}, {ProjPoint::infinity(), ProjPoint(0.0, 1.0)});
  const MatX d = Mat2(mat2(-0.5, 0.0, 0.0, 0.5));
  CHECK((kamnitzer(s0) - d).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kamnitzer eigenvalues are the Hecke points") {
  Rng r(44);
  for (int m = 1; m <= 3; ++m)
    for (int t = 0; t < 10; ++t) {
      const auto seq = random_sequence(r, m);
      std::vector<cplx> pts;
      for (const auto& st : seq.steps) pts.push_back(st.point);
      const MatX a = kamnitzer(seq);
      CHECK(a.rows() == 2 * m);
      CHECK(multiset_distance(roots(charpoly(a)), pts) < 1e-6);
    }
}

TEST_CASE("left eigenvectors") {
  Rng r(45);
  const MatX a = random_slice(r, 2).dense();
  for (cplx mu : chi(a)) {
    const VecX v = left_eigenvector(a, mu);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    CHECK((v.transpose() * a - mu * v.transpose()).norm() < 1e-9);
  }
}

TEST_CASE("woodward points for m = 1") {
  const cplx l2(0.6, -0.3), m1(0.2, 0.5), m2(-0.7, 0.1);
  const cplx l2b = l2 / (m2 - m1);
  const auto sb = sequence_from_local({0, 0}, {m1, m2}, {ProjPoint::infinity(), ProjPoint(l2, 1.0)});
  const auto w = woodward(kamnitzer(sb), {m1, m2});
  CHECK(chordal(w[0], ProjPoint::zero()) < 1e-10);
  CHECK(chordal(w[1], ProjPoint(1.0, -l2b)) < 1e-10);
  MatX d(2, 2);
  d << m1, 0.0, 0.0, m2;
  const auto wd = woodward(d, {m1, m2});
  CHECK(chordal(wd[0], ProjPoint::infinity()) < 1e-12);
  CHECK(chordal(wd[1], ProjPoint::zero()) < 1e-12);
}

TEST_CASE("conjecture residual for m = 1, 2") {
  Rng r(46);
  for (int m = 1; m <= 2; ++m)
    for (int t = 0; t < 40; ++t) CHECK(conjecture_check(random_sequence(r, m)) < 1e-8);
  CHECK(std::abs(conjecture_phi(ProjPoint(2.0, 1.0)).ratio() - cplx(-0.5)) < 1e-15);
}

}
