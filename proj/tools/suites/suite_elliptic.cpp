// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "suites.hpp"

namespace hecke::suites {

namespace {

bool separated(const Lattice& L, const std::vector<cplx>& pts, double d) {
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (L.distance_to_lattice(pts[i] - pts[j]) < d) return false;
  return true;
}

// n mutually separated points of X.
std::vector<CurvePoint> spread_points(Sampler& S, const Lattice& L, int n, double d = 0.1) {
  for (;;) {
    std::vector<cplx> z;
    for (int i = 0; i < n; ++i) z.push_back(S.lift());
    if (!separated(L, z, d)) continue;
    std::vector<CurvePoint> out;
    for (cplx x : z) out.push_back(L.point(x));
    return out;
  }
}

// Directions bounded away from [1:0] and [0:1].
ProjPoint generic_dir(Sampler& S) {
  for (;;) {
    const ProjPoint a = S.proj();
    if (std::abs(a.a()) > 0.05 && std::abs(a.c()) > 0.05) return a;
  }
}

json bundle_json(const EllipticBundle& E) { return E.str(); }

struct Fixture {
  EllipticBundle E;
  CurvePoint p;
  ProjPoint a;
  EllipticBundle expected;
  std::optional<EllipticBundle> also;  // the same class through the other root of pi
};

struct SingleRow {
  std::string name;
  std::function<Fixture(Sampler&, const Lattice&)> make;
};

std::vector<SingleRow> single_rows() {
  auto two = [](Sampler& S, const Lattice& L) {
    const auto pq = spread_points(S, L, 2);
    return std::make_pair(pq[0].lift, pq[1].lift);
  };
  const LineBundle O{};
  std::vector<SingleRow> rows;
  rows.push_back({"O(D)+O, deg D = 2, [1:0] -> O(D)+O(-p)", [two, O](Sampler& S, const Lattice& L) {
                    const auto [p, s] = two(S, L);
                    const LineBundle D{2, s};
                    return Fixture{EllipticBundle::decomposable(D, O), L.point(p), ProjPoint::infinity(),
                                   EllipticBundle::decomposable(D, LineBundle{-1, -p}), {}};
                  }});
  rows.push_back({"O(D)+O, deg D = 2, [l:1] -> O(D-p)+O", [two, O](Sampler& S, const Lattice& L) {
                    const auto [p, s] = two(S, L);
                    const LineBundle D{2, s};
                    return Fixture{EllipticBundle::decomposable(D, O), L.point(p), ProjPoint(S.gaussian(), 1.0),
                                   EllipticBundle::decomposable(D * LineBundle{-1, -p}, O), {}};
                  }});
  rows.push_back({"O(q)+O, [1:0] -> O(q)+O(-p)", [two, O](Sampler& S, const Lattice& L) {
                    const auto [p, q] = two(S, L);
                    return Fixture{EllipticBundle::decomposable({1, q}, O), L.point(p), ProjPoint::infinity(),
                                   EllipticBundle::decomposable({1, q}, {-1, -p}), {}};
                  }});
  rows.push_back({"O(q)+O, [l:1] -> O(q-p)+O", [two, O](Sampler& S, const Lattice& L) {
                    const auto [p, q] = two(S, L);
                    return Fixture{EllipticBundle::decomposable({1, q}, O), L.point(p), ProjPoint(S.gaussian(), 1.0),
                                   EllipticBundle::decomposable({0, q - p}, O), {}};
                  }});
  rows.push_back({"O(p)+O, [1:0] -> O(p)+O(-p)", [O](Sampler& S, const Lattice& L) {
                    const cplx p = S.lift();
                    return Fixture{EllipticBundle::decomposable({1, p}, O), L.point(p), ProjPoint::infinity(),
                                   EllipticBundle::decomposable({1, p}, {-1, -p}), {}};
                  }});
  rows.push_back({"O(p)+O, [0:1] -> O+O", [O](Sampler& S, const Lattice& L) {
                    const cplx p = S.lift();
                    return Fixture{EllipticBundle::decomposable({1, p}, O), L.point(p), ProjPoint::zero(),
                                   EllipticBundle::decomposable(O, O), {}};
                  }});
  rows.push_back({"O(p)+O, [x:y] -> F2", [O](Sampler& S, const Lattice& L) {
                    const cplx p = S.lift();
                    return Fixture{EllipticBundle::decomposable({1, p}, O), L.point(p), generic_dir(S),
                                   EllipticBundle::f2(), {}};
                  }});
  rows.push_back({"O(p-q)+O, [1:0] -> O(p-q)+O(-p)", [two, O](Sampler& S, const Lattice& L) {
                    const auto [p, q] = two(S, L);
                    return Fixture{EllipticBundle::decomposable({0, p - q}, O), L.point(p), ProjPoint::infinity(),
                                   EllipticBundle::decomposable({0, p - q}, {-1, -p}), {}};
                  }});
  rows.push_back({"O(p-q)+O, [0:1] -> O(-q)+O", [two, O](Sampler& S, const Lattice& L) {
                    const auto [p, q] = two(S, L);
                    return Fixture{EllipticBundle::decomposable({0, p - q}, O), L.point(p), ProjPoint::zero(),
                                   EllipticBundle::decomposable({-1, -q}, O), {}};
                  }});
  rows.push_back({"O(p-q)+O, [x:y] -> G2(q) x O(-q)", [two, O](Sampler& S, const Lattice& L) {
                    const auto [p, q] = two(S, L);
                    return Fixture{EllipticBundle::decomposable({0, p - q}, O), L.point(p), generic_dir(S),
                                   EllipticBundle::g2(q, {-1, -q}), {}};
                  }});
  rows.push_back({"O+O, [1:0] -> O+O(-p)", [O](Sampler& S, const Lattice& L) {
                    const cplx p = S.lift();
                    return Fixture{EllipticBundle::decomposable(O, O), L.point(p), ProjPoint::infinity(),
                                   EllipticBundle::decomposable(O, {-1, -p}), {}};
                  }});
  rows.push_back({"O+O, [l:1] -> O+O(-p)", [O](Sampler& S, const Lattice& L) {
                    const cplx p = S.lift();
                    return Fixture{EllipticBundle::decomposable(O, O), L.point(p), ProjPoint(S.gaussian(), 1.0),
                                   EllipticBundle::decomposable(O, {-1, -p}), {}};
                  }});
  rows.push_back({"O+O(q), [l:1] -> O+O(q-p) (summands swapped)", [two, O](Sampler& S, const Lattice& L) {
                    const auto [p, q] = two(S, L);
                    return Fixture{EllipticBundle::decomposable(O, {1, q}), L.point(p), generic_dir(S),
                                   EllipticBundle::decomposable(O, {0, q - p}), {}};
                  }});
  rows.push_back({"F2, [1:0] -> O+O(-p)", [O](Sampler& S, const Lattice& L) {
                    const cplx p = S.lift();
                    return Fixture{EllipticBundle::f2(), L.point(p), ProjPoint::infinity(),
                                   EllipticBundle::decomposable(O, {-1, -p}), {}};
                  }});
  rows.push_back({"F2, [l:1] -> G2(p) x O(-p)", [](Sampler& S, const Lattice& L) {
                    const cplx p = S.lift();
                    return Fixture{EllipticBundle::f2(), L.point(p), ProjPoint(S.gaussian(), 1.0),
                                   EllipticBundle::g2(p, {-1, -p}), {}};
                  }});
  rows.push_back({"G2(p), a != a_i -> L(a)+L(a)^-1", [](Sampler& S, const Lattice& L) {
                    const cplx p = S.lift();
                    ProjPoint a;
                    do a = S.proj();
                    while ([&] {
                      for (const auto& b : L.branch_points())
                        if (chordal(a, b) < 0.05) return true;
                      return false;
                    }());
                    const auto roots = invert_cover(L, a);
                    const LineBundle u{0, roots.first.lift}, v{0, roots.second.lift};
                    return Fixture{EllipticBundle::g2(p), L.point(p), a, EllipticBundle::decomposable(u, u.inverse()),
                                   EllipticBundle::decomposable(v, v.inverse())};
                  }});
  rows.push_back({"G2(p), a = a_i -> F2 x L_i", [](Sampler& S, const Lattice& L) {
                    const cplx p = S.lift();
                    const int i = S.integer(0, 3);
                    return Fixture{EllipticBundle::g2(p), L.point(p), L.branch_points()[i],
                                   EllipticBundle::f2({0, L.torsion_lifts()[i]}), {}};
                  }});
  return rows;
}

}  // namespace

Report verify_elliptic_tables(const RunConfig& cfg) {
  const Lattice L(cfg.tau);
  Sampler S(cfg.seed, kEllipticStream, L);
  Report R("verify-elliptic-tables", cfg);
  const int draws = R.samples_or(20);
  const double teq = R.tol_or(1e-8), tdet = R.tol_or(1e-6), teta = R.tol_or(1e-8);

  json tags = json::object();
  for (const auto& row : single_rows()) {
    auto& ce = R.check(row.name + ": equivariance residual", "oracle", teq);
    auto& cd = R.check(row.name + ": only det zero at the Hecke point", "oracle", tdet);
    auto& ca = R.check(row.name + ": eta_at = direction", "closed form", teta);
    auto& cl = R.check(row.name + ": hecke length changes by +-1", "closed form", 0.0);
    auto& cc = R.check(row.name + ": target class", "closed form", 0.0);
    for (int k = 0; k < draws; ++k) {
      const Fixture f0 = row.make(S, L);
      const LineBundle M{0, S.lift()};
      const EllipticBundle E = f0.E.twisted(M);
      const json in{{"bundle", bundle_json(E)}, {"point", to_json(f0.p.lift)}, {"direction", to_json(f0.a)}};
      try {
        const MorphismRep rep = morphism_rep(L, E, f0.p, f0.a);
        tags[row.name] = rep.row;
        ce.observe(check_equivariance(L, rep, 20, S.engine()()), in);
        const DetZero dz = locate_det_zero(L, rep);
        cd.observe(dz.winding == 1 ? dz.distance : INFINITY, in);
        ca.observe(chordal(eta_at(rep.eval, f0.p.lift), f0.a), in);
        cl.observe(std::abs(std::abs(rep.domain.hecke_length() - E.hecke_length()) - 1), in);
        bool ok = isomorphic(L, rep.domain, f0.expected.twisted(M));
        if (f0.also) ok = ok && isomorphic(L, rep.domain, f0.also->twisted(M));
        cc.observe(ok ? 0.0 : 1.0, merged(in, {{"target", bundle_json(rep.domain)}}));
      } catch (const HeckeError& e) {
        ce.error(e.what(), in);
      }
    }
  }
  R.notes()["row_tags"] = tags;

  // Strictly semistable sources: the result is a G2-twist iff the direction is good.
  auto& cg = R.check("good-direction clause on degree-0 bundles", "closed form", 0.0);
  for (int k = 0; k < R.samples_or(20) * 5; ++k) {
    const auto pts = spread_points(S, L, 2);
    const cplx p = pts[0].lift, q = pts[1].lift;
    EllipticBundle E;
    switch (k % 4) {
      case 0: E = EllipticBundle::decomposable({0, p - q}, {}); break;
      case 1: E = EllipticBundle::decomposable({}, {}); break;
      case 2: E = EllipticBundle::f2(); break;
      default: {
        const int i = S.integer(0, 3);
        E = EllipticBundle::decomposable({0, L.torsion_lifts()[i]}, {0, L.torsion_lifts()[i]});
      }
    }
    E = E.twisted({0, S.lift()});
    const int pick = S.integer(0, 2);
    const ProjPoint a = pick == 0 ? ProjPoint::infinity() : pick == 1 ? ProjPoint::zero() : generic_dir(S);
    const json in{{"bundle", bundle_json(E)}, {"point", to_json(p)}, {"direction", to_json(a)}};
    try {
      const bool g2 = single_hecke(L, E, pts[0], a).kind == BundleKind::G2Twist;
      cg.observe(g2 != is_good_line(L, E, pts[0], a), in);
    } catch (const HeckeError& e) {
      cg.error(e.what(), in);
    }
  }

  auto& cn = R.check("corrupted character in diag(1, theta^(p)) has residual > 1e-2", "oracle", 0.0);
  auto& ci = R.check("identity endomorphism of O+O has zero residual", "closed form", 0.0);
  for (int k = 0; k < 10; ++k) {
    const auto pts = spread_points(S, L, 2);
    const cplx p = pts[0].lift, q = pts[1].lift;
    const EllipticBundle E = EllipticBundle::decomposable({1, q}, {});
    MorphismRep rep = morphism_rep(L, E, pts[0], ProjPoint::infinity());
    rep.eval = [L, p](cplx z) { return mat2(1.0, 0.0, 0.0, theta_w(L, z, p + 0.13)); };
    const double r = check_equivariance(L, rep, 20, S.engine()());
    cn.observe(r > 1e-2 ? 0.0 : 1.0, {{"point", to_json(p)}, {"residual", r}});
    const EllipticBundle O2 = EllipticBundle::decomposable({}, {});
    const MorphismRep id{[](cplx) -> Mat2 { return Mat2::Identity(); }, "identity", O2, O2, p};
    ci.observe(check_equivariance(L, id, 20, S.engine()()), {{"point", to_json(p)}});
  }
  return R;
}

// ---------------------------------------------------------------- double table

namespace {

struct DoubleCase {
  std::string block;
  std::string dirs;
  EllipticBundle E;
  CurvePoint p1, p2;
  ProjPoint a, b;
  std::optional<DoubleHeckeResult> expected;  // explicit table entries
  bool stable_first;                          // s/u label of E_1
};

LineBundle deg0(cplx s) { return {0, s}; }

DoubleHeckeResult unstable() { return {true, {}, ""}; }
DoubleHeckeResult split(cplx s) {
  return {false, EllipticBundle::decomposable(deg0(s), deg0(-s)), ""};
}
DoubleHeckeResult f2_of(cplx s) { return {false, EllipticBundle::f2(deg0(s)), ""}; }

// Block of O(p-e) + O(e-p) by the 2-torsion relations of p.
std::string split_block_name(const Lattice& L, const EllipticBundle& E, CurvePoint p1, CurvePoint p2) {
  const cplx p = E.l1.lift + L.halve_sum(p1, p2).lift;
  const bool t1 = L.distance_to_lattice(2.0 * (p - p1.lift)) < 1e-7;
  const bool t2 = L.distance_to_lattice(2.0 * (p - p2.lift)) < 1e-7;
  if (t1 && t2) return "O(p-e)+O(e-p), 2p = 2p1 = 2p2";
  if (t1) return "O(p-e)+O(e-p), 2p = 2p1";
  if (t2) return "O(p-e)+O(e-p), 2p = 2p2";
  return "O(p-e)+O(e-p), generic p";
}

// Uses the constructive inverse of h to realise second coordinate a_i. The
// base comes back as L + L^-1 for either root L of pi, so split blocks are
// relabelled from the base actually used.
DoubleCase branch_case(Sampler& S, const Lattice& L, const std::string& block, const ProjPoint& h0,
                       CurvePoint p1, CurvePoint p2) {
  const int i = S.integer(0, 3);
  const MarkedSequence s = construct_sequence(L, {h0, L.branch_points()[i]}, p1, {p2});
  const std::string name =
      s.base.kind == BundleKind::Decomposable ? split_block_name(L, s.base, p1, p2) : block;
  return {name, "[x:y], b = a_i", s.base, p1, p2, s.ell_q, s.steps[0].direction,
          f2_of(L.torsion_lifts()[i]), true};
}

}  // namespace

Report verify_double_table(const RunConfig& cfg) {
  const Lattice L(cfg.tau);
  Sampler S(cfg.seed, kDoubleStream, L);
  Report R("verify-double-table", cfg);
  const int total = R.samples_or(200);

  const ProjPoint inf = ProjPoint::infinity(), zero = ProjPoint::zero();
  // Case generators, cycled through in order; each sample redraws points and directions.
  using Gen = std::function<DoubleCase()>;
  std::vector<Gen> gens;

  auto pts2 = [&] {
    const auto p = spread_points(S, L, 2);
    return std::make_pair(p[0], p[1]);
  };
  // O(p-e) + O(e-p) with e = (p1 + p2)/2; `kind` picks the 2-torsion relations.
  auto split_block = [&](int kind) {
    for (;;) {
      auto [p1, p2] = pts2();
      cplx p;
      if (kind == 3) {
        // 2p = 2p1 and 2p = 2p2: p2 - p1 is 2-torsion.
        p2 = L.point(p1.lift + L.torsion_lifts()[S.integer(1, 3)]);
      }
      const cplx e = L.halve_sum(p1, p2).lift;
      if (kind == 0) p = S.lift();
      else if (kind == 1 || kind == 3) p = p1.lift + L.torsion_lifts()[S.integer(0, 3)];
      else p = p2.lift + L.torsion_lifts()[S.integer(0, 3)];
      const double d2e = L.distance_to_lattice(2.0 * (p - e));
      const double d1 = L.distance_to_lattice(2.0 * (p - p1.lift)), d2 = L.distance_to_lattice(2.0 * (p - p2.lift));
      const bool want1 = kind == 1 || kind == 3, want2 = kind == 2 || kind == 3;
      if (d2e < 0.1 || (!want1 && d1 < 0.1) || (!want2 && d2 < 0.1)) continue;
      const EllipticBundle E = EllipticBundle::decomposable(deg0(p - e), deg0(e - p));
      return std::make_tuple(E, p1, p2, p, e);
    }
  };
  const char* names[] = {"O(p-e)+O(e-p), generic p", "O(p-e)+O(e-p), 2p = 2p1", "O(p-e)+O(e-p), 2p = 2p2",
                         "O(p-e)+O(e-p), 2p = 2p1 = 2p2"};

  gens.push_back([&] {
    auto [p1, p2] = pts2();
    const ProjPoint a = S.proj();
    ProjPoint b;
    do b = S.proj();
    while (chordal(a, b) < 0.05);
    const cplx e = L.halve_sum(p1, p2).lift;
    return DoubleCase{"O+O", "a != b", EllipticBundle::decomposable({}, {}), p1, p2, a, b,
                      split(e - p1.lift), false};
  });
  gens.push_back([&] {
    auto [p1, p2] = pts2();
    const ProjPoint a = S.proj();
    return DoubleCase{"O+O", "a = b", EllipticBundle::decomposable({}, {}), p1, p2, a, a, unstable(), false};
  });
  gens.push_back([&] {
    auto [p1, p2] = pts2();
    const cplx e = L.halve_sum(p1, p2).lift;
    return DoubleCase{"F2", "[1:0], [l:1]", EllipticBundle::f2(), p1, p2, inf, ProjPoint(S.gaussian(), 1.0),
                      split(e - p1.lift), false};
  });
  gens.push_back([&] {
    auto [p1, p2] = pts2();
    return DoubleCase{"F2", "[1:0], [1:0]", EllipticBundle::f2(), p1, p2, inf, inf, unstable(), false};
  });
  gens.push_back([&] {
    auto [p1, p2] = pts2();
    return DoubleCase{"F2", "[l:1], b != a_i", EllipticBundle::f2(), p1, p2, ProjPoint(S.gaussian(), 1.0),
                      S.proj(), std::nullopt, true};
  });
  gens.push_back([&] {
    auto [p1, p2] = pts2();
    return branch_case(S, L, "F2", L.branch_points()[0], p1, p2);
  });
  for (int kind = 0; kind < 4; ++kind) {
    const std::string nm = names[kind];
    const bool t1 = kind == 1 || kind == 3, t2 = kind == 2 || kind == 3;
    // a = [0:1]: bad through O(e-p); the result is L_j-type when 2p = 2p1.
    gens.push_back([&, kind, nm, t1] {
      auto [E, p1, p2, p, e] = split_block(kind);
      const ProjPoint b = generic_dir(S);
      const auto ex = t1 ? f2_of(p1.lift - p) : split(p - p1.lift);
      return DoubleCase{nm, "[0:1], [x:y]", E, p1, p2, zero, b, ex, false};
    });
    gens.push_back([&, kind, nm, t1] {
      auto [E, p1, p2, p, e] = split_block(kind);
      const auto ex = t1 ? split(p1.lift - p) : split(p - p1.lift);
      return DoubleCase{nm, "[0:1], [1:0]", E, p1, p2, zero, inf, ex, false};
    });
    gens.push_back([&, kind, nm] {
      auto [E, p1, p2, p, e] = split_block(kind);
      return DoubleCase{nm, "[0:1], [0:1]", E, p1, p2, zero, zero, unstable(), false};
    });
    gens.push_back([&, kind, nm, t2] {
      auto [E, p1, p2, p, e] = split_block(kind);
      const ProjPoint b = generic_dir(S);
      const auto ex = t2 ? f2_of(p - p2.lift) : split(p - p2.lift);
      return DoubleCase{nm, "[1:0], [x:y]", E, p1, p2, inf, b, ex, false};
    });
    gens.push_back([&, kind, nm, t2] {
      auto [E, p1, p2, p, e] = split_block(kind);
      return DoubleCase{nm, "[1:0], [0:1]", E, p1, p2, inf, zero, split(p - p2.lift), false};
    });
    gens.push_back([&, kind, nm] {
      auto [E, p1, p2, p, e] = split_block(kind);
      return DoubleCase{nm, "[1:0], [1:0]", E, p1, p2, inf, inf, unstable(), false};
    });
    gens.push_back([&, kind, nm] {
      auto [E, p1, p2, p, e] = split_block(kind);
      return DoubleCase{nm, "[x:y], b != a_i", E, p1, p2, generic_dir(S), S.proj(), std::nullopt, true};
    });
    gens.push_back([&, kind, nm] {
      auto [E, p1, p2, p, e] = split_block(kind);
      return branch_case(S, L, nm, pi_cover(L, p - e), p1, p2);
    });
  }

  auto& cs = R.check("table and chained routes agree on the S-class", "oracle", 0.0);
  auto& cx = R.check("explicit table entries (exact class)", "closed form", 0.0);
  auto& cu = R.check("s/u label of E_1 matches the chained first step", "oracle", 0.0);
  json coverage = json::object();
  for (int k = 0; k < total; ++k) {
    const DoubleCase c = gens[k % gens.size()]();
    const std::string key = c.block + " | " + c.dirs;
    coverage[key] = coverage.value(key, 0) + 1;
    const json in{{"case", key},          {"bundle", bundle_json(c.E)}, {"p1", to_json(c.p1.lift)},
                  {"p2", to_json(c.p2.lift)}, {"a", to_json(c.a)},         {"b", to_json(c.b)}};
    try {
      const auto t = double_hecke(L, c.E, c.p1, c.p2, c.a, c.b);
      const auto ch = double_hecke_chained(L, c.E, c.p1, c.p2, c.a, c.b);
      json io = in;
      io["table_row"] = t.row;
      io["chained_row"] = ch.row;
      io["table"] = t.unstable ? json("u") : json(bundle_json(t.cls));
      io["chained"] = ch.unstable ? json("u") : json(bundle_json(ch.cls));
      cs.observe(same_s_class(L, t, ch) ? 0.0 : 1.0, io);
      if (c.expected) {
        bool ok = t.unstable == c.expected->unstable;
        if (ok && !t.unstable) ok = isomorphic(L, t.cls, c.expected->cls, 1e-7);
        cx.observe(ok ? 0.0 : 1.0, io);
      }
      const bool s1 = morphism_rep(L, c.E, c.p1, c.a).domain.kind == BundleKind::G2Twist;
      cu.observe((t.row[0] == 's') != s1 || s1 != c.stable_first, io);
    } catch (const HeckeError& e) {
      cs.error(e.what(), in);
    }
  }
  R.notes()["coverage"] = coverage;
  return R;
}

// ---------------------------------------------------------------- H_p(T^2, n)

namespace {

double max_chordal(const std::vector<ProjPoint>& x, const std::vector<ProjPoint>& y) {
  double r = 0.0;
  for (size_t i = 0; i < x.size(); ++i) r = std::max(r, chordal(x[i], y[i]));
  return r;
}

json dir_list(const std::vector<ProjPoint>& d) {
  json a = json::array();
  for (const auto& p : d) a.push_back(to_json(p));
  return a;
}

// Sampled distance from a tuple to f(X) on a 96 x 96 grid, independent of distance_to_f.
double grid_distance(const Lattice& L, const std::array<ProjPoint, 3>& t, CurvePoint q, CurvePoint p1,
                     CurvePoint p2) {
  double best = INFINITY;
  const int n = 96;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto f = f_embedding(L, L.point((i + 0.5) / n + (j + 0.5) / n * L.tau()), q, p1, p2);
      best = std::min(best, std::max({chordal(t[0], f[0]), chordal(t[1], f[1]), chordal(t[2], f[2])}));
    }
  return best;
}

}  // namespace

Report compute_space_t2(const RunConfig& cfg, int n) {
  const Lattice L(cfg.tau);
  Sampler S(cfg.seed, kSpaceT2Stream + n, L);
  Report R("compute-space T2 " + std::to_string(n), cfg);
  if (n < 0) throw ConfigError("n must be non-negative");
  const double tround = R.tol_or(1e-7);

  auto tuple_of = [&](int len) {
    std::vector<ProjPoint> t;
    for (int i = 0; i < len; ++i) t.push_back(S.proj());
    return t;
  };

  if (n == 0) {
    auto& c = R.check("h_0 reaches every point of the sample grid", "closed form", tround);
    std::vector<ProjPoint> grid{ProjPoint::infinity(), ProjPoint::zero()};
    for (const auto& b : L.branch_points()) grid.push_back(b);
    for (int i = 1; i < 4; ++i)
      for (int j = 0; j < 6; ++j)
        grid.emplace_back(std::sin(kPi * i / 4.0) * std::exp(kI * (kPi * j / 3.0)), 1.0 - std::cos(kPi * i / 4.0));
    const CurvePoint q = S.point();
    for (const auto& g : grid) {
      const json in{{"h0", to_json(g)}};
      try {
        const auto s = construct_sequence(L, {g}, q, {});
        c.observe(chordal(h_total(L, s)[0], g), in);
      } catch (const HeckeError& e) {
        c.error(e.what(), in);
      }
    }
    R.notes()["description"] = "H_p(T2,0) = CP1, coordinate h_0 = [E]";
    R.notes()["grid_points"] = grid.size();
    return R;
  }

  auto& cr = R.check("construct_sequence then h_total returns the tuple", "oracle", tround, n <= 2);
  const int draws = R.samples_or(100);
  int members = 0;
  for (int k = 0; k < draws; ++k) {
    const auto pts = spread_points(S, L, n + 1);
    const CurvePoint q = pts[0];
    const std::vector<CurvePoint> ps(pts.begin() + 1, pts.end());
    const auto t = tuple_of(n + 1);
    const json in{{"tuple", dir_list(t)}, {"q", to_json(q.lift)}};
    try {
      const auto s = construct_sequence(L, t, q, ps);
      cr.observe(max_chordal(h_total(L, s), t), in);
      if (n <= 2) members += membership_Hp(L, s);
    } catch (const HeckeError& e) {
      cr.error(e.what(), in);
    }
  }

  if (n >= 3) {
    R.notes()["membership"] = "exact membership is known for n <= 2 only (Unsupported)";
    R.notes()["description"] = "h_total roundtrip only";
    return R;
  }

  if (n == 1) {
    auto& cm = R.check("membership_Hp is always true for n = 1", "closed form", 0.0);
    cm.observe(draws - members, {{"draws", draws}});
    // (E, l_q) with E = O(p-e) + O(e-p), 2e = q + p1, l_q good and a bad line at p1.
    auto& ci = R.check("bad first line: h = (pi(p-e), pi(p-p1)) or (pi(p-e), pi(p-q))", "closed form", 1e-8);
    auto& cu = R.check("bad first line gives an unstable E_1", "closed form", 0.0);
    int hit_p1 = 0, hit_q = 0;
    for (int k = 0; k < draws; ++k) {
      const auto pts = spread_points(S, L, 2);
      const CurvePoint q = pts[0], p1 = pts[1];
      const cplx e = L.halve_sum(q, p1).lift;
      cplx p;
      do p = S.lift();
      while (L.distance_to_lattice(2.0 * (p - e)) < 0.1);
      const EllipticBundle E = EllipticBundle::decomposable(deg0(p - e), deg0(e - p));
      const ProjPoint bad = k % 2 ? ProjPoint::zero() : ProjPoint::infinity();
      const MarkedSequence s{E, q, ProjPoint(1.0, 1.0), {{p1, bad}}};
      const json in{{"p", to_json(p)}, {"q", to_json(q.lift)}, {"p1", to_json(p1.lift)}, {"line", to_json(bad)}};
      try {
        const auto h = h_total(L, s);
        const double d1 = chordal(h[1], pi_cover(L, p - p1.lift)), dq = chordal(h[1], pi_cover(L, p - q.lift));
        (d1 < dq ? hit_p1 : hit_q)++;
        ci.observe(std::max(chordal(h[0], pi_cover(L, p - e)), std::min(d1, dq)), in);
        cu.observe(build_chain(L, E, s.steps).bundles[1].kind == BundleKind::G2Twist, in);
      } catch (const HeckeError& e2) {
        ci.error(e2.what(), in);
      }
    }
    ci.extra["matches pi(p-p1)"] = hit_p1;
    ci.extra["matches pi(p-q)"] = hit_q;
    R.notes()["description"] = "H_p(T2,1) = (CP1)^2; the unstable locus is f(X) = (pi_1, pi_2)(X)";
    return R;
  }

  // n == 2
  const auto pts = spread_points(S, L, 3, 0.15);
  const CurvePoint q = pts[0], p1 = pts[1], p2 = pts[2];
  const cplx e1 = L.halve_sum(q, p1).lift, e2 = L.halve_sum(q, p2).lift;
  R.notes()["points"] = {{"q", to_json(q.lift)}, {"p1", to_json(p1.lift)}, {"p2", to_json(p2.lift)}};

  auto& cj = R.check("f is injective on 1000 sampled pairs (min distance > 0)", "oracle", 0.0);
  double mind = INFINITY;
  json worst;
  for (int k = 0; k < R.samples_or(1000); ++k) {
    const CurvePoint x = S.point(), y = S.point();
    if (L.distance_to_lattice(x.lift - y.lift) < 1e-3) continue;
    const auto fx = f_embedding(L, x, q, p1, p2), fy = f_embedding(L, y, q, p1, p2);
    const double d = std::max({chordal(fx[0], fy[0]), chordal(fx[1], fy[1]), chordal(fx[2], fy[2])});
    if (d < mind) mind = d, worst = {{"p", to_json(x.lift)}, {"p'", to_json(y.lift)}};
    cj.observe(d > 0.0 ? 0.0 : 1.0, {{"p", to_json(x.lift)}, {"p'", to_json(y.lift)}});
  }
  cj.extra["min_distance"] = mind;
  cj.extra["closest_pair"] = worst;

  auto& cpi = R.check("pi identities: preimages {p, 2e1-p}, {p, 2p1-p} and the e-shifts", "closed form", 1e-10);
  for (int k = 0; k < R.samples_or(100); ++k) {
    const CurvePoint p = S.point();
    const auto f = f_embedding(L, p, q, p1, p2);
    const auto fa = f_embedding(L, L.point(2.0 * e1 - p.lift), q, p1, p2);
    const auto fb = f_embedding(L, L.point(2.0 * p1.lift - p.lift), q, p1, p2);
    const auto fc = f_embedding(L, L.point(p.lift + e1 - p1.lift), q, p1, p2);
    const auto fd = f_embedding(L, L.point(p.lift + e2 - p2.lift), q, p1, p2);
    cpi.observe(std::max({chordal(f[0], fa[0]), chordal(f[1], fb[1]), chordal(f[1], fc[0]), chordal(f[2], fd[0])}),
                {{"p", to_json(p.lift)}});
  }

  auto& cf = R.check("f(p) tuples are not members and have unstable terminal", "closed form", 0.0);
  for (int k = 0; k < R.samples_or(100); ++k) {
    const CurvePoint p = S.point();
    const auto f = f_embedding(L, p, q, p1, p2);
    const json in{{"p", to_json(p.lift)}};
    try {
      const auto s = construct_sequence(L, {f[0], f[1], f[2]}, q, {p1, p2});
      cf.observe(membership_Hp(L, s) || terminal_semistable(L, s), in);
    } catch (const HeckeError& e) {
      cf.error(e.what(), in);
    }
  }

  auto& cm = R.check("random tuples farther than 0.1 from f(X) are members with semistable terminal",
                     "oracle", 0.0);
  int far = 0, tried = 0;
  while (far < R.samples_or(100) && tried < 5000) {
    ++tried;
    const auto t = tuple_of(3);
    const double d = grid_distance(L, {t[0], t[1], t[2]}, q, p1, p2);
    if (d <= 0.1) continue;
    ++far;
    const json in{{"tuple", dir_list(t)}, {"grid_distance", d}};
    try {
      const auto s = construct_sequence(L, t, q, {p1, p2});
      cm.observe(!membership_Hp(L, s) || !terminal_semistable(L, s), in);
    } catch (const HeckeError& e) {
      cm.error(e.what(), in);
    }
  }
  R.notes()["far_tuples_tried"] = tried;
  R.notes()["description"] = "H_p(T2,2) = (CP1)^3 minus the embedded curve f(X)";
  return R;
}

}  // namespace hecke::suites
