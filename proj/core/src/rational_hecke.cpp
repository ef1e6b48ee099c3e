// SPDX-License-Identifier: MIT
#include "hecke/rational_hecke.hpp"

#include <algorithm>
#include <cmath>

#include "hecke/errors.hpp"

namespace hecke {

std::string RationalBundle::str() const {
  return "O(" + std::to_string(n) + ")+O(" + std::to_string(m) + ")";
}

RationalBundle single_hecke(const RationalBundle& b, const ProjPoint& dir) {
  if (b.n == b.m) return {b.n, b.n - 1};
  if (dir.is_infinity()) return {b.n, b.m - 1};
  return RationalBundle::make(b.n - 1, b.m);
}

std::string branch_transition(const RationalBundle& b, const ProjPoint& dir) {
  const bool inf = dir.is_infinity();
  std::string row = b.semistable() ? "semistable" : "unstable";
  row += inf ? " [1:0] -> diag(1, z-mu)" : (b.semistable() ? " [l:1] -> ((l, z-mu), (1, 0))"
                                                           : " [l:1] -> ((z-mu, l), (0, 1))");
  return row + " : " + b.str() + " <- " + single_hecke(b, dir).str();
}

SeriesMat2 morphism_matrix(const RationalBundle& b, const RationalHeckeStep& step, int order) {
  const auto one = TruncSeries::constant(1.0, order);
  const auto zero = TruncSeries(order);
  const auto lin = TruncSeries::linear(step.point, order);
  if (step.direction.is_infinity()) return {one, zero, zero, lin};
  const auto lam = TruncSeries::constant(step.direction.ratio(), order);
  if (b.semistable()) return {lam, lin, one, zero};
  return {lin, lam, zero, one};
}

SeriesMat2 chart_convert(const SeriesMat2& alpha_z, const RationalBundle& codomain,
                         const RationalBundle& domain, double tol) {
  const int a[2] = {codomain.n, codomain.m};
  const int b[2] = {domain.n, domain.m};
  const int deg = std::max(alpha_z.degree(), 0);
  int top = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) top = std::max(top, a[i] - b[j]);
  SeriesMat2 out(std::max(top, 1));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const TruncSeries& s = alpha_z.at(i, j);
      for (int k = 0; k <= std::min(deg, s.order()); ++k) {
        // c_k z^k = c_k w^{-k}, times w^{a_i - b_j}
        const int e = a[i] - b[j] - k;
        if (e < 0) {
          if (std::abs(s[k]) > tol)
            throw NotGlobal("coefficient of w^" + std::to_string(e) + " is " +
                            std::to_string(std::abs(s[k])));
          continue;
        }
        out.at(i, j)[e] += s[k];
      }
    }
  return out;
}

RationalChain build_chain(const RationalSequence& seq) {
  const int n = static_cast<int>(seq.steps.size());
  const int order = std::max(kDefaultOrder, n + 2);
  RationalChain ch{{}, {seq.base}, {}, SeriesMat2::identity(order)};
  for (const auto& st : seq.steps) {
    const Mat2 p = ch.product.eval(st.point);
    const ProjPoint local(Vec2(p.inverse() * st.direction.vec()));
    const RationalBundle& cur = ch.bundles.back();
    SeriesMat2 a = morphism_matrix(cur, {st.point, local}, order);
    ch.product = ch.product * a;
    ch.alphas.push_back(std::move(a));
    ch.local_dirs.push_back(local);
    ch.bundles.push_back(single_hecke(cur, local));
  }
  return ch;
}

RationalSequence sequence_from_local(const RationalBundle& base, const std::vector<cplx>& points,
                                     const std::vector<ProjPoint>& local_dirs) {
  RationalSequence seq{base, {}};
  const int order = std::max(kDefaultOrder, static_cast<int>(points.size()) + 2);
  SeriesMat2 prod = SeriesMat2::identity(order);
  RationalBundle cur = base;
  for (size_t i = 0; i < points.size(); ++i) {
    const Mat2 p = prod.eval(points[i]);
    seq.steps.push_back({points[i], ProjPoint(Vec2(p * local_dirs[i].vec()))});
    prod = prod * morphism_matrix(cur, {points[i], local_dirs[i]}, order);
    cur = single_hecke(cur, local_dirs[i]);
  }
  return seq;
}

std::vector<ProjPoint> h_map(const RationalSequence& seq) {
  const RationalChain ch = build_chain(seq);
  std::vector<ProjPoint> out;
  const int order = ch.product.order();
  SeriesMat2 prod = SeriesMat2::identity(order);
  for (size_t i = 0; i < ch.alphas.size(); ++i) {
    prod = prod * ch.alphas[i];
    out.push_back(eta_at(prod, seq.steps[i].point));
  }
  return out;
}

std::vector<cplx> default_points(int n) {
  std::vector<cplx> mu;
  for (int k = 1; k <= n; ++k) mu.emplace_back(double(k) / (n + 1), 0.1 * k);
  return mu;
}

RationalBundle terminal_bundle(const RationalSequence& seq) {
  return build_chain(seq).bundles.back();
}

bool membership_H(int n, const std::vector<ProjPoint>& dirs, const std::vector<cplx>& points) {
  const std::vector<cplx> mu = points.empty() ? default_points(n) : points;
  RationalSequence seq{{0, 0}, {}};
  for (int i = 0; i < n; ++i) seq.steps.push_back({mu[i], dirs[i]});
  return terminal_bundle(seq).hecke_length() == n % 2;
}

bool membership_H_closed_form(const std::vector<ProjPoint>& dirs) {
  switch (dirs.size()) {
    case 0:
    case 1:
      return true;
    case 2:
      return !same_point(dirs[0], dirs[1]);
    case 3:
      return !(same_point(dirs[0], dirs[1]) && same_point(dirs[1], dirs[2]));
    default:
      throw Unsupported("closed form known for n <= 3 only");
  }
}

}  // namespace hecke
