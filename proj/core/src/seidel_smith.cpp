// SPDX-License-Identifier: MIT
#include "hecke/seidel_smith.hpp"

#include <algorithm>
#include <cmath>

#include "hecke/errors.hpp"

namespace hecke {

MatX SlodowyMatrix::dense() const {
  const int n = 2 * m;
  MatX a = MatX::Zero(n, n);
  for (int k = 0; k < m; ++k) {
    a.block(2 * k, 0, 2, 2) = blocks[k];
    if (k + 1 < m) a.block(2 * k, 2 * (k + 1), 2, 2) = Mat2::Identity();
  }
  return a;
}

SlodowyMatrix SlodowyMatrix::from_dense(const MatX& a) {
  SlodowyMatrix s{static_cast<int>(a.rows() / 2), {}};
  for (int k = 0; k < s.m; ++k) s.blocks.push_back(a.block(2 * k, 0, 2, 2));
  return s;
}

double slice_defect(const MatX& a) {
  MatX shape = SlodowyMatrix::from_dense(a).dense();
  return (a - shape).cwiseAbs().maxCoeff();
}

std::vector<cplx> chi(const MatX& a) {
  if (a.rows() == 2) {
    const cplx half = 0.5 * a.trace();
    const cplx disc = std::sqrt(half * half - a.determinant());
    return {half + disc, half - disc};
  }
  Eigen::ComplexEigenSolver<MatX> es(a, false);
  const VecX ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

VecX left_eigenvector(const MatX& a, cplx mu) {
  const MatX m = a.transpose() - mu * MatX::Identity(a.rows(), a.cols());
  Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeFullV);
  VecX v = svd.matrixV().col(a.cols() - 1);
  return v / v.norm();
}

MatX kamnitzer(const RationalSequence& seq) {
  const int n = static_cast<int>(seq.steps.size());
  if (n % 2 != 0) throw ReductionFailure("odd number of modifications");
  const int m = n / 2;
  const RationalChain ch = build_chain(seq);
  if (!(ch.bundles.back() == RationalBundle{seq.base.n - m, seq.base.m - m}))
    throw ReductionFailure("terminal class is " + ch.bundles.back().str());
  const SeriesMat2& P = ch.product;

  // Unknowns: remainder r (z^j e_i, j < m, at the basis index) and quotient q
  // (z^j e_i, j < m). Equations: coefficients of z^k e_c for k < 2m.
  const int N = 4 * m;
  auto basis = [m](int j, int i) { return 2 * (m - 1 - j) + i; };
  MatX M = MatX::Zero(N, N);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < 2; ++i) {
      M(2 * j + i, basis(j, i)) = 1.0;
      const int col = 2 * m + 2 * j + i;
      for (int c = 0; c < 2; ++c)
        for (int k = j; k < 2 * m; ++k)
          if (k - j <= P.order()) M(2 * k + c, col) += P.at(c, i)[k - j];
    }
  Eigen::FullPivLU<MatX> lu(M);
  lu.setThreshold(1e-11);
  if (lu.rank() < N) throw ReductionFailure("cokernel system is singular");

  MatX A = MatX::Zero(2 * m, 2 * m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < 2; ++i) {
      const int col = basis(j, i);
      if (j + 1 < m) {
        A(basis(j + 1, i), col) = 1.0;
        continue;
      }
      VecX rhs = VecX::Zero(N);
      rhs(2 * m + i) = 1.0;  // z^m e_i
      const VecX sol = lu.solve(rhs);
      A.col(col) = sol.head(2 * m);
    }
  return A;
}

std::vector<ProjPoint> woodward(const MatX& a, const std::vector<cplx>& eigenvalues) {
  for (size_t i = 0; i < eigenvalues.size(); ++i)
    for (size_t j = i + 1; j < eigenvalues.size(); ++j)
      if (std::abs(eigenvalues[i] - eigenvalues[j]) <= 1e-8)
        throw DegenerateSpectrum("repeated eigenvalue");
  std::vector<ProjPoint> out;
  const int n = static_cast<int>(a.rows());
  for (cplx mu : eigenvalues) {
    const VecX v = left_eigenvector(a, mu);
    out.emplace_back(v(n - 2), v(n - 1));
  }
  return out;
}

double conjecture_check(const RationalSequence& seq) {
  const auto h = h_map(seq);
  const MatX A = kamnitzer(seq);
  std::vector<cplx> mu;
  for (const auto& st : seq.steps) mu.push_back(st.point);
  const auto w = woodward(A, mu);
  double worst = 0.0;
  for (size_t k = 0; k < h.size(); ++k) worst = std::max(worst, chordal(conjecture_phi(h[k]), w[k]));
  return worst;
}

}  // namespace hecke
