// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>

#include "suites.hpp"

namespace hecke::suites {

namespace {

// Fixed 20-point grid on CP^1: both poles plus 18 points on three latitude rings.
std::vector<ProjPoint> grid20() {
  std::vector<ProjPoint> g{ProjPoint::infinity(), ProjPoint::zero()};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) {
      const double th = kPi * (i + 1) / 4.0, ph = 2.0 * kPi * (j + 0.5 * i) / 6.0;
      g.emplace_back(std::sin(th) * std::exp(kI * ph), 1.0 - std::cos(th));
    }
  return g;
}

// 64 directions: both poles plus 62 on an 8 x 8 latitude/longitude grid minus the duplicated poles.
std::vector<ProjPoint> grid64() {
  std::vector<ProjPoint> g{ProjPoint::infinity(), ProjPoint::zero()};
  for (int i = 0; i < 8 && g.size() < 64; ++i)
    for (int j = 0; j < 8 && g.size() < 64; ++j) {
      const double th = kPi * (i + 0.5) / 8.0, ph = 2.0 * kPi * j / 8.0;
      g.emplace_back(std::sin(th) * std::exp(kI * ph), 1.0 - std::cos(th));
    }
  return g;
}

json dirs_json(const std::vector<ProjPoint>& d) {
  json a = json::array();
  for (const auto& p : d) a.push_back(to_json(p));
  return a;
}

json cplx_list(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(to_json(z));
  return a;
}

// Distance between two multisets of complex numbers, by greedy matching.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  double worst = 0.0;
  for (cplx x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [x](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

// A sequence in H(S^2, 2m): random points, local directions [1:0] with probability 1/4.
RationalSequence random_h_sequence(Sampler& S, int m) {
  for (;;) {
    std::vector<cplx> pts;
    std::vector<ProjPoint> loc;
    for (int k = 0; k < 2 * m; ++k) {
      pts.push_back(S.gaussian());
      loc.push_back(S.uniform() < 0.25 ? ProjPoint::infinity() : ProjPoint(S.gaussian(), 1.0));
    }
    bool spread = true;
    for (int i = 0; i < 2 * m; ++i)
      for (int j = i + 1; j < 2 * m; ++j) spread = spread && std::abs(pts[i] - pts[j]) > 0.05;
    if (!spread) continue;
    RationalSequence seq = sequence_from_local({0, 0}, pts, loc);
    if (terminal_bundle(seq) == RationalBundle{-m, -m}) return seq;
  }
}

}  // namespace

Report verify_rational_tables(const RunConfig& cfg) {
  const Lattice L(cfg.tau);
  Sampler S(cfg.seed, kRationalStream, L);
  Report R("verify-rational-tables", cfg);

  struct Row {
    const char* name;
    bool semistable;
    bool infinity;
  };
  const Row rows[] = {{"unstable [1:0]", false, true},
                      {"unstable [l:1]", false, false},
                      {"semistable [l:1]", true, false},
                      {"semistable [1:0]", true, true}};
  const int draws = R.samples_or(50);
  for (const Row& row : rows) {
    auto& cd = R.check(std::string(row.name) + ": det = c (z - mu) exactly", "closed form", 0.0);
    auto& ce = R.check(std::string(row.name) + ": eta_at(alpha, mu) = direction", "closed form", 1e-10);
    auto& cg = R.check(std::string(row.name) + ": chart_convert is polynomial in w", "closed form", 0.0);
    auto& cl = R.check(std::string(row.name) + ": degree drops by one", "identity", 0.0);
    for (int k = 0; k < draws; ++k) {
      const int m = S.integer(-3, 3);
      const int n = row.semistable ? m : m + S.integer(1, 5);
      const RationalBundle b{n, m};
      const cplx mu = S.gaussian();
      const ProjPoint dir = row.infinity ? ProjPoint::infinity() : ProjPoint(S.gaussian(), 1.0);
      const json in{{"bundle", b.str()}, {"mu", to_json(mu)}, {"direction", to_json(dir)}};
      const SeriesMat2 a = morphism_matrix(b, {mu, dir});
      const TruncSeries d = a.det();
      double r = std::abs(d[0] + mu * d[1]);
      for (int j = 2; j <= d.order(); ++j) r = std::max(r, std::abs(d[j]));
      if (d[1] == 0.0) r = INFINITY;
      cd.observe(r, in);
      ce.observe(chordal(eta_at(a.evaluator(), mu), dir), in);
      const RationalBundle f = single_hecke(b, dir);
      try {
        chart_convert(a, b, f);
        cg.observe(0.0, in);
      } catch (const NotGlobal& e) {
        cg.error(e.what(), in);
      }
      cl.observe(std::abs(f.degree() - (b.degree() - 1)), in);
    }
  }

  auto& cc = R.check("chart forms: diag(1,z-mu) -> identity; ((z-mu,l),(0,1)) -> ((1, l w^n),(0,1))",
                     "closed form", 1e-15);
  for (int k = 0; k < draws; ++k) {
    const int n = S.integer(1, 5);
    const cplx mu = S.gaussian(), lam = S.gaussian();
    const RationalBundle b{n, 0};
    const json in{{"n", n}, {"mu", to_json(mu)}, {"lambda", to_json(lam)}};
    const SeriesMat2 u = chart_convert(morphism_matrix(b, {mu, ProjPoint::infinity()}), b, {n, -1});
    const SeriesMat2 dd = chart_convert(morphism_matrix(b, {mu, ProjPoint(lam, 1.0)}), b, {n - 1, 0});
    // Leading behaviour at w = 0 (z = infinity): u(0) = identity, dd = ((1 - mu w, l w^n), (0, 1)).
    double r = (u.coeff(0) - Mat2::Identity()).cwiseAbs().maxCoeff();
    r = std::max(r, std::abs(dd.at(0, 1)[n] - lam));
    for (int j = 0; j <= dd.at(0, 1).order(); ++j)
      if (j != n) r = std::max(r, std::abs(dd.at(0, 1)[j]));
    r = std::max(r, (dd.coeff(0) - Mat2::Identity()).cwiseAbs().maxCoeff());
    cc.observe(r, in);
  }

  auto& cn = R.check("corrupted matrix (z^2 added) raises NotGlobal", "oracle", 0.0);
  for (int k = 0; k < 10; ++k) {
    const int n = S.integer(1, 4);
    const RationalBundle b{n, 0};
    SeriesMat2 a = morphism_matrix(b, {S.gaussian(), ProjPoint(S.gaussian(), 1.0)});
    a.at(1, 0)[2] += 1.0;
    try {
      chart_convert(a, b, {n - 1, 0});
      cn.observe(1.0, {{"n", n}});
    } catch (const NotGlobal&) {
      cn.observe(0.0, {{"n", n}});
    }
  }

  auto& ch = R.check("hecke length changes by +-1 on a 64-direction grid, n - m <= 5", "closed form", 0.0);
  const auto g64 = grid64();
  for (int len = 0; len <= 5; ++len)
    for (int m = -2; m <= 2; ++m) {
      const RationalBundle b{m + len, m};
      for (const auto& dir : g64) {
        const int dl = single_hecke(b, dir).hecke_length() - b.hecke_length();
        ch.observe(std::abs(std::abs(dl) - 1), {{"bundle", b.str()}, {"direction", to_json(dir)}});
      }
    }

  auto& ct = R.check("transition examples: (n,0)[1:0] -> (n,-1); (0,0) -> (0,-1); (3,3)[2:1] -> (3,2)",
                     "closed form", 0.0);
  for (int n = 1; n <= 4; ++n)
    ct.observe(!(single_hecke({n, 0}, ProjPoint::infinity()) == RationalBundle{n, -1}), {{"n", n}});
  for (const auto& dir : g64) ct.observe(!(single_hecke({0, 0}, dir) == RationalBundle{0, -1}), {{"dir", to_json(dir)}});
  ct.observe(!(single_hecke({3, 3}, ProjPoint(2.0, 1.0)) == RationalBundle{3, 2}), {{"case", "(3,3) [2:1]"}});
  ct.extra["rows"] = json::array({branch_transition({3, 0}, ProjPoint::infinity()),
                                  branch_transition({0, 0}, ProjPoint(0.5, 1.0)),
                                  branch_transition({3, 3}, ProjPoint(2.0, 1.0))});

  auto& cr = R.check("h_map roundtrip of table sequences", "oracle", 1e-9);
  auto& ca = R.check("r equal leading lines give O + O(-r) after r steps", "closed form", 0.0);
  for (int k = 0; k < R.samples_or(100); ++k) {
    const int n = S.integer(1, 6);
    std::vector<ProjPoint> dirs;
    std::vector<cplx> pts;
    for (int i = 0; i < n; ++i) {
      dirs.push_back(S.uniform() < 0.2 ? ProjPoint::infinity() : S.proj());
      pts.push_back(S.gaussian());
    }
    RationalSequence seq{{0, 0}, {}};
    for (int i = 0; i < n; ++i) seq.steps.push_back({pts[i], dirs[i]});
    const json in{{"points", cplx_list(pts)}, {"directions", dirs_json(dirs)}};
    try {
      const auto h = h_map(seq);
      double r = 0.0;
      for (int i = 0; i < n; ++i) r = std::max(r, chordal(h[i], dirs[i]));
      cr.observe(r, in);
    } catch (const HeckeError& e) {
      cr.error(e.what(), in);
    }
    const int rr = S.integer(1, 5);
    const ProjPoint a = S.proj();
    RationalSequence eq{{0, 0}, {}};
    for (int i = 0; i < rr; ++i) eq.steps.push_back({S.gaussian(), a});
    ca.observe(!(terminal_bundle(eq) == RationalBundle{0, -rr}), {{"r", rr}, {"direction", to_json(a)}});
  }
  return R;
}

Report compute_space_s2(const RunConfig& cfg, int n) {
  const Lattice L(cfg.tau);
  Sampler S(cfg.seed, kSpaceS2Stream + n, L);
  Report R("compute-space S2 " + std::to_string(n), cfg);
  if (n < 0) throw ConfigError("n must be non-negative");

  // The complement descriptions: n <= 1 everything, n = 2 minus the diagonal,
  // n = 3 minus the small diagonal.
  auto closed = [n](const std::vector<ProjPoint>& d) {
    auto eq = [](const ProjPoint& x, const ProjPoint& y) { return chordal(x, y) < 1e-8; };
    if (n == 2) return !eq(d[0], d[1]);
    if (n == 3) return !(eq(d[0], d[1]) && eq(d[1], d[2]));
    return true;
  };
  const bool has_closed = n <= 3;
  auto& c = R.check(has_closed ? "membership predicate equals the closed-form complement"
                               : "membership predicate (no closed form, reported only)",
                    "closed form", 0.0, has_closed);
  int members = 0, total = 0;
  auto test = [&](const std::vector<ProjPoint>& d) {
    const bool m = membership_H(n, d);
    members += m;
    ++total;
    if (has_closed) c.observe(m != closed(d), {{"directions", dirs_json(d)}});
    else c.observe(0.0, {});
  };
  if (n >= 1 && n <= 3) {
    const auto g = grid20();
    std::vector<int> idx(n, 0);
    for (;;) {
      std::vector<ProjPoint> d;
      for (int i : idx) d.push_back(g[i]);
      test(d);
      int i = 0;
      while (i < n && ++idx[i] == 20) idx[i++] = 0;
      if (i == n) break;
    }
  }
  const int randoms = R.samples_or(200);
  for (int k = 0; k < randoms; ++k) {
    std::vector<ProjPoint> d;
    for (int i = 0; i < n; ++i) d.push_back(S.proj());
    // Half of the draws sit on a diagonal stratum.
    if (n >= 2 && k % 2 == 1) {
      const int i = S.integer(0, n - 1), j = S.integer(0, n - 1);
      d[j] = d[i];
      if (k % 4 == 3)
        for (auto& x : d) x = d[0];
    }
    test(d);
  }
  if (n == 0) test({});
  R.notes()["tuples"] = total;
  R.notes()["members"] = members;
  R.notes()["description"] = n == 2   ? "(CP1)^2 minus the diagonal"
                             : n == 3 ? "(CP1)^3 minus the small diagonal {(a,a,a)}"
                             : n <= 1 ? "all of (CP1)^n"
                                      : "transition-system predicate only";
  return R;
}

Report check_conjecture(const RunConfig& cfg, int m) {
  const Lattice L(cfg.tau);
  Sampler S(cfg.seed, kConjectureStream + m, L);
  Report R("check-conjecture " + std::to_string(m), cfg);
  if (m < 1) throw ConfigError("m must be positive");

  if (m == 1) {
    auto& ca = R.check("kamnitzer alpha form", "closed form", 1e-10);
    auto& cb = R.check("kamnitzer beta form", "closed form", 1e-10);
    auto& cx = R.check("chi(kamnitzer) = {mu1, mu2}", "closed form", 1e-9);
    auto& cw = R.check("woodward of both forms", "closed form", 1e-10);
    for (int k = 0; k < R.samples_or(100); ++k) {
      const cplx l1 = S.gaussian(), l2 = S.gaussian(), m1 = S.gaussian(), m2 = S.gaussian();
      const cplx l2b = l2 / (m2 - m1);
      const json in{{"lambda1", to_json(l1)}, {"lambda2", to_json(l2)}, {"mu1", to_json(m1)}, {"mu2", to_json(m2)}};
      try {
        const auto sa = sequence_from_local({0, 0}, {m1, m2}, {ProjPoint(l1, 1.0), ProjPoint(l2, 1.0)});
        const auto sb = sequence_from_local({0, 0}, {m1, m2}, {ProjPoint::infinity(), ProjPoint(l2, 1.0)});
        const MatX ka = kamnitzer(sa), kb = kamnitzer(sb);
        const Mat2 ea = mat2(m1 - l1 * l2, l1 * (m2 - m1 + l1 * l2), -l2, m2 + l1 * l2);
        const Mat2 eb = mat2(m2, -l2, 0.0, m1);
        ca.observe((ka - MatX(ea)).cwiseAbs().maxCoeff(), in);
        cb.observe((kb - MatX(eb)).cwiseAbs().maxCoeff(), in);
        cx.observe(std::max(multiset_distance(chi(ka), {m1, m2}), multiset_distance(chi(kb), {m1, m2})), in);
        const auto wa = woodward(ka, {m1, m2}), wb = woodward(kb, {m1, m2});
        cw.observe(std::max({chordal(wa[0], ProjPoint(1.0, -l1)), chordal(wa[1], ProjPoint(-l2b, 1.0 + l1 * l2b)),
                             chordal(wb[0], ProjPoint::zero()), chordal(wb[1], ProjPoint(1.0, -l2b))}),
                   in);
      } catch (const HeckeError& e) {
        ca.error(e.what(), in);
      }
    }
  }

  const bool proven = m <= 2;
  const int draws = R.samples_or(proven ? 200 : 50);
  auto& cc = R.check(proven ? "woodward-hecke diagram residual" : "woodward-hecke diagram residual (sweep)",
                     "closed form", 1e-8, proven);
  auto& cy = R.check("chi(kamnitzer(seq)) = Hecke points", "closed form", 1e-8);
  auto& cs = R.check("left eigenvector chain v_(j-1) = mu v_j", "closed form", 1e-9);
  for (int k = 0; k < draws; ++k) {
    const RationalSequence seq = random_h_sequence(S, m);
    std::vector<cplx> pts;
    for (const auto& st : seq.steps) pts.push_back(st.point);
    const json in{{"points", cplx_list(pts)}, {"global_directions", dirs_json(h_map(seq))}};
    try {
      cc.observe(conjecture_check(seq), in);
      const MatX A = kamnitzer(seq);
      cy.observe(multiset_distance(chi(A), pts), in);
      double r = 0.0;
      for (cplx mu : pts) {
        const VecX v = left_eigenvector(A, mu);
        const VecX res = v.transpose() * A - mu * v.transpose();
        r = std::max(r, res.norm());
        for (int j = 1; j < m; ++j) r = std::max(r, (v.segment(2 * (j - 1), 2) - mu * v.segment(2 * j, 2)).norm());
      }
      cs.observe(r, in);
    } catch (const HeckeError& e) {
      cc.error(e.what(), in);
    }
  }

  if (m == 2) {
    auto& cm = R.check("at most m of the 2m woodward points coincide (500 random slices)", "closed form", 0.0);
    for (int k = 0; k < R.samples_or(500); ++k) {
      SlodowyMatrix Y{2, {}};
      for (int b = 0; b < 2; ++b) {
        Mat2 blk;
        blk << S.gaussian(), S.gaussian(), S.gaussian(), S.gaussian();
        Y.blocks.push_back(blk);
      }
      const MatX A = Y.dense();
      const auto mu = chi(A);
      double gap = INFINITY;
      for (size_t i = 0; i < mu.size(); ++i)
        for (size_t j = i + 1; j < mu.size(); ++j) gap = std::min(gap, std::abs(mu[i] - mu[j]));
      if (gap < 1e-6) continue;
      const auto w = woodward(A, mu);
      int worst = 0;
      for (size_t i = 0; i < w.size(); ++i) {
        int same = 0;
        for (size_t j = 0; j < w.size(); ++j) same += same_point(w[i], w[j]);
        worst = std::max(worst, same);
      }
      cm.observe(worst > m, {{"eigenvalues", cplx_list(mu)}});
    }
  }
  return R;
}

}  // namespace hecke::suites
