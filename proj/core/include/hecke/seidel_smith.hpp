// SPDX-License-Identifier: MIT
// Slodowy slice S_2m, the eigenvalue map, the z-action on the cokernel of
// a composed Hecke morphism, and the left-eigenvector embedding into (CP^1)^2m.
#pragma once

#include <vector>

#include "hecke/grassmannian.hpp"
#include "hecke/rational_hecke.hpp"

namespace hecke {

using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

// Blocks Y_1..Y_m in the left column, identities on the block superdiagonal.
struct SlodowyMatrix {
  int m = 1;
  std::vector<Mat2> blocks;

  MatX dense() const;
  // Reads the left column; the rest of A is not checked.
  static SlodowyMatrix from_dense(const MatX& a);
};

// Deviation of a dense matrix from the slice shape.
double slice_defect(const MatX& a);

std::vector<cplx> chi(const MatX& a);
inline std::vector<cplx> chi(const SlodowyMatrix& s) { return chi(s.dense()); }

// Row vector v with v A = mu v, unit norm.
VecX left_eigenvector(const MatX& a, cplx mu);

// Matrix of multiplication by z on C[z]^2 / P C[z]^2, P the composed
// morphism of a sequence with terminal class (-m, -m), in the basis
// z^{m-1} e1, z^{m-1} e2, ..., e1, e2.
MatX kamnitzer(const RationalSequence& seq);

// [X(mu_k) : Y(mu_k)] from the last block of the left eigenvector, in the
// caller's eigenvalue order.
std::vector<ProjPoint> woodward(const MatX& a, const std::vector<cplx>& eigenvalues);

// [x:y] -> [-y:x]
inline ProjPoint conjecture_phi(const ProjPoint& p) { return {-p.c(), p.a()}; }

// max_k chordal(phi(h_k), woodward(kamnitzer(seq))_k)
double conjecture_check(const RationalSequence& seq);

}  // namespace hecke
