// SPDX-License-Identifier: MIT
// Hecke modifications of rank-2 bundles O(n) + O(m) on CP^1.
#pragma once

#include <string>
#include <vector>

#include "hecke/grassmannian.hpp"
#include "hecke/pseries.hpp"

namespace hecke {

// O(n) + O(m) with n >= m.
struct RationalBundle {
  int n = 0;
  int m = 0;

  static RationalBundle make(int a, int b) { return a >= b ? RationalBundle{a, b} : RationalBundle{b, a}; }
  int hecke_length() const { return n - m; }
  int degree() const { return n + m; }
  bool semistable() const { return n == m; }
  RationalBundle twist(int k) const { return {n + k, m + k}; }
  bool operator==(const RationalBundle&) const = default;
  std::string str() const;
};

struct RationalHeckeStep {
  cplx point;           // mu = xi(p) in the chart U_0
  ProjPoint direction;  // [1:0] or [lambda:1] after twist normalization
};

// Steps carry global directions h_i in the trivialization of the base bundle.
struct RationalSequence {
  RationalBundle base;
  std::vector<RationalHeckeStep> steps;
};

RationalBundle single_hecke(const RationalBundle& b, const ProjPoint& dir);
std::string branch_transition(const RationalBundle& b, const ProjPoint& dir);

// Representative morphism for a step whose direction is in b's own frame.
SeriesMat2 morphism_matrix(const RationalBundle& b, const RationalHeckeStep& step,
                           int order = kDefaultOrder);

// [alpha]_w = D_E(w) alpha(1/w) D_F(w)^{-1} with D = diag(w^n, w^m), E the
// bundle being modified and F the result. NotGlobal on negative powers.
SeriesMat2 chart_convert(const SeriesMat2& alpha_z, const RationalBundle& codomain,
                         const RationalBundle& domain, double tol = 1e-12);

// Local morphisms, intermediate bundles and their product for a sequence.
struct RationalChain {
  std::vector<SeriesMat2> alphas;
  std::vector<RationalBundle> bundles;  // E_0 .. E_n
  std::vector<ProjPoint> local_dirs;
  SeriesMat2 product;
};
RationalChain build_chain(const RationalSequence& seq);

// Builds the sequence whose i-th step has the given direction in E_{i-1}'s frame.
RationalSequence sequence_from_local(const RationalBundle& base, const std::vector<cplx>& points,
                                     const std::vector<ProjPoint>& local_dirs);

std::vector<ProjPoint> h_map(const RationalSequence& seq);

// mu_k = k / (n + 1) + 0.1 i k
std::vector<cplx> default_points(int n);

bool membership_H(int n, const std::vector<ProjPoint>& dirs, const std::vector<cplx>& points = {});
// Complement descriptions for n <= 3; Unsupported above.
bool membership_H_closed_form(const std::vector<ProjPoint>& dirs);
RationalBundle terminal_bundle(const RationalSequence& seq);

}  // namespace hecke
