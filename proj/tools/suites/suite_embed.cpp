// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>
#include <numeric>

#include "suites.hpp"

namespace hecke::suites {

namespace {

std::vector<cplx> far_points(Sampler& S, int n, double d = 0.1) {
  for (;;) {
    std::vector<cplx> z;
    for (int i = 0; i < n; ++i) z.push_back(S.gaussian());
    bool ok = true;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) ok = ok && std::abs(z[i] - z[j]) > d;
    if (ok) return z;
  }
}

std::vector<CurvePoint> far_curve_points(Sampler& S, const Lattice& L, int n, double d = 0.1) {
  for (;;) {
    std::vector<CurvePoint> z;
    for (int i = 0; i < n; ++i) z.push_back(S.point());
    bool ok = true;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) ok = ok && L.distance_to_lattice(z[i].lift - z[j].lift) > d;
    if (ok) return z;
  }
}

// Lines from a small palette so that coincidences are frequent.
ProjPoint palette(Sampler& S, const std::vector<ProjPoint>& pal) {
  const int k = S.integer(0, static_cast<int>(pal.size()));
  return k < static_cast<int>(pal.size()) ? pal[k] : S.proj();
}

json marks_json(const std::vector<Mark>& marks) {
  json a = json::array();
  for (const auto& m : marks) a.push_back({{"point", to_json(m.point)}, {"line", to_json(m.line)}});
  return a;
}

// Steps realising lines given in the frame of E (transport through the explicit chain).
std::vector<EllipticStep> steps_from_lines(const Lattice& L, const EllipticBundle& E,
                                           const std::vector<CurvePoint>& pts,
                                           const std::vector<ProjPoint>& lines) {
  std::vector<EllipticStep> steps;
  EllipticChain ch;
  ch.bundles.push_back(E);
  for (size_t i = 0; i < pts.size(); ++i) {
    const Mat2 P = ch.composed(i)(pts[i].lift);
    const ProjPoint local(Vec2(P.inverse() * lines[i].vec()));
    steps.push_back({pts[i], local});
    ch.alphas.push_back(morphism_rep(L, ch.bundles.back(), pts[i], local));
    ch.bundles.push_back(ch.alphas.back().domain);
  }
  return steps;
}

Verdict expected_verdict(int m, int n) {
  if (2 * m < n) return Verdict::Stable;
  if (2 * m == n) return Verdict::StrictlySemistable;
  return Verdict::Unstable;
}

}  // namespace

Report embed_check(const RunConfig& cfg) {
  const Lattice L(cfg.tau);
  Sampler S(cfg.seed, kEmbedStream, L);
  Report R("embed-check", cfg);
  const RationalBundle O2{0, 0};

  // O + O over CP^1 with one, two and three lines.
  auto& cx = R.check("O+O verdicts: 1 line unstable; 2 lines semistable iff distinct; 3 lines stable iff distinct",
                     "closed form", 0.0);
  for (int k = 0; k < 50; ++k) {
    const auto z = far_points(S, 3);
    const ProjPoint a = S.proj(), b = S.proj(), c = S.proj();
    auto verdict = [&](const std::vector<ProjPoint>& lines) {
      ParabolicBundle pb{O2, {}};
      for (size_t i = 0; i < lines.size(); ++i) pb.marks.push_back({z[i], lines[i]});
      return stability(pb).verdict;
    };
    const std::vector<std::pair<std::vector<ProjPoint>, Verdict>> cases{
        {{a}, Verdict::Unstable},
        {{a, b}, Verdict::StrictlySemistable},
        {{a, a}, Verdict::Unstable},
        {{a, b, c}, Verdict::Stable},
        {{a, a, c}, Verdict::Unstable},
        {{a, b, b}, Verdict::Unstable},
        {{c, c, c}, Verdict::Unstable}};
    for (const auto& [lines, want] : cases) {
      const Verdict got = verdict(lines);
      json lj = json::array();
      for (const auto& l : lines) lj.push_back(to_json(l));
      cx.observe(got != want, {{"lines", lj}, {"verdict", to_string(got)}});
    }
  }

  auto& ct = R.check("verdict follows m against n/2 for O+O with up to 6 lines", "closed form", 0.0);
  for (int k = 0; k < R.samples_or(200); ++k) {
    const int n = S.integer(1, 6);
    const auto z = far_points(S, n);
    const std::vector<ProjPoint> pal{S.proj(), S.proj()};
    ParabolicBundle pb{O2, {}};
    for (int i = 0; i < n; ++i) pb.marks.push_back({z[i], palette(S, pal)});
    int m = 0;
    for (const auto& x : pb.marks) {
      int same = 0;
      for (const auto& y : pb.marks) same += same_point(x.line, y.line);
      m = std::max(m, same);
    }
    ct.observe(stability(pb).verdict != expected_verdict(m, n), {{"marks", marks_json(pb.marks)}});
  }

  auto& cp = R.check("pdeg: rank 2 gives deg E; all sigma = +1 gives deg L + n w; mixed signs cancel",
                     "closed form", 1e-15);
  for (int n = 1; n <= 6; ++n) {
    ParabolicBundle pb{RationalBundle{n, -n - 1}, {}};
    for (int i = 0; i < n; ++i) pb.marks.push_back({cplx(i), S.proj()});
    cp.observe(std::abs(pdeg(pb) + 1.0), {{"n", n}});
    cp.observe(std::abs(pdeg_line(2, std::vector<int>(n, 1), 1e-3) - (2.0 + n * 1e-3)), {{"n", n}});
    cp.observe(std::abs(pdeg_line(-1, {1, -1}, 1e-3) + 1.0), {{"n", n}});
  }

  // Good and bad lines on elliptic bundles.
  auto& cb = R.check("bad lines: F2 only [1:0]; G2 none; L_i+L_i all; L+L^-1 [1:0] and [0:1] apart",
                     "closed form", 0.0);
  for (int k = 0; k < 50; ++k) {
    const CurvePoint p = S.point();
    const ProjPoint g = S.proj();
    const LineBundle M{0, S.lift()};
    const int i = S.integer(0, 3);
    const LineBundle Li{0, L.torsion_lifts()[i]};
    cplx u;
    do u = S.lift();
    while (L.torsion_index(u, 0.05) >= 0 || L.distance_to_lattice(2.0 * u) < 0.05);
    const auto F = EllipticBundle::f2(Li), G = EllipticBundle::g2(S.lift(), M);
    const auto LL = EllipticBundle::decomposable(Li, Li), LU = EllipticBundle::decomposable({0, u}, {0, -u});
    const auto inf = ProjPoint::infinity(), zero = ProjPoint::zero();
    const json in{{"point", to_json(p.lift)}, {"line", to_json(g)}, {"i", i}, {"u", to_json(u)}};
    int wrong = 0;
    wrong += !line_status(L, F, p, inf).bad || line_status(L, F, p, g).bad || line_status(L, F, p, zero).bad;
    wrong += line_status(L, G, p, g).bad || line_status(L, G, p, inf).bad;
    wrong += !line_status(L, LL, p, g).bad || !line_status(L, LL, p, inf).bad;
    const auto s0 = line_status(L, LU, p, inf), s1 = line_status(L, LU, p, zero);
    wrong += !s0.bad || !s1.bad || same_point(s0.key, s1.key) || line_status(L, LU, p, g).bad;
    cb.observe(wrong, in);
  }

  // Unstable marks force an unstable terminal bundle, with Hecke length at least 2r - n.
  auto& clr = R.check("unstable marks give an unstable terminal bundle (O+O over CP^1, n <= 4)", "closed form", 0.0);
  auto& cle = R.check("unstable marks give an unstable terminal bundle (elliptic, n = 2)", "closed form", 0.0);
  auto& car = R.check("r equal leading lines give O+O(-r)", "closed form", 0.0);
  auto& cae = R.check("r leading lines bad in the same direction give Hecke length r", "closed form", 0.0);
  int unstable_r = 0, unstable_e = 0;
  const int seqs = R.samples_or(200);
  for (int k = 0; k < seqs; ++k) {
    const int n = S.integer(1, 4);
    const auto z = far_points(S, n);
    const std::vector<ProjPoint> pal{ProjPoint::infinity(), S.proj()};
    RationalSequence seq{O2, {}};
    for (int i = 0; i < n; ++i) seq.steps.push_back({z[i], palette(S, pal)});
    const ParabolicBundle pb{O2, lines_from_sequence(seq)};
    const auto v = stability(pb);
    const RationalBundle t = terminal_bundle(seq);
    const json in{{"marks", marks_json(pb.marks)}, {"terminal", t.str()}};
    if (v.verdict == Verdict::Unstable) {
      ++unstable_r;
      clr.observe(t.semistable() || t.hecke_length() < 2 * v.witness - n, in);
    } else {
      clr.observe(0.0, in);
    }
    int r = 1;
    while (r < n && same_point(seq.steps[r].direction, seq.steps[0].direction)) ++r;
    RationalSequence head{O2, {seq.steps.begin(), seq.steps.begin() + r}};
    car.observe(!(terminal_bundle(head) == RationalBundle{0, -r}), in);
  }
  for (int k = 0; k < seqs; ++k) {
    const int n = 2;
    const auto pts = far_curve_points(S, L, n);
    EllipticBundle E;
    if (k % 2 == 0) {
      E = EllipticBundle::f2({0, L.torsion_lifts()[S.integer(0, 3)]});
    } else {
      cplx u;
      do u = S.lift();
      while (L.distance_to_lattice(2.0 * u) < 0.05);
      E = EllipticBundle::decomposable({0, u}, {0, -u});
    }
    const std::vector<ProjPoint> pal{ProjPoint::infinity(), ProjPoint::zero()};
    std::vector<ProjPoint> lines;
    for (int i = 0; i < n; ++i) lines.push_back(palette(S, pal));
    ParabolicBundle pb{E, {}, kDefaultWeight, L};
    for (int i = 0; i < n; ++i) pb.marks.push_back({pts[i].lift, lines[i]});
    const json in{{"bundle", E.str()}, {"marks", marks_json(pb.marks)}};
    try {
      const auto steps = steps_from_lines(L, E, pts, lines);
      const auto ch = build_chain(L, E, steps);
      const EllipticBundle t = ch.bundles.back();
      const auto v = stability(pb);
      if (v.verdict == Verdict::Unstable) {
        ++unstable_e;
        cle.observe(t.semistable() || t.hecke_length() < 2 * v.witness - n, merged(in, {{"terminal", t.str()}}));
      } else {
        cle.observe(0.0, in);
      }
      const auto cls = classify_lines(pb);
      int r = 0;
      while (r < n && cls.bad[r] && cls.group[r] == cls.group[0]) ++r;
      if (r > 0) cae.observe(ch.bundles[r].hecke_length() != r, merged(in, {{"r", r}}));
    } catch (const HeckeError& e) {
      cle.error(e.what(), in);
    }
  }
  R.notes()["unstable_rational_mark_sets"] = unstable_r;
  R.notes()["unstable_elliptic_mark_sets"] = unstable_e;

  // Hecke embeddings of sequences with semistable terminal bundle.
  auto& cer = R.check("rational hecke_embedding is Stable for n = 0, 2, 4", "closed form", 0.0);
  auto& cwi = R.check("verdicts agree at weights 1e-3 and 1e-4", "closed form", 0.0);
  for (int k = 0; k < 60; ++k) {
    const int n = 2 * (k % 3);
    const auto z = far_points(S, n + 3);
    RationalSequence seq{O2, {}};
    for (int i = 0; i < n; ++i) seq.steps.push_back({z[i], S.proj()});
    if (!terminal_bundle(seq).semistable()) continue;
    std::vector<Mark> aux;
    const ProjPoint a0 = seq.steps.empty() ? S.proj() : seq.steps[0].direction;
    aux.push_back({z[n], a0});
    aux.push_back({z[n + 1], S.proj()});
    aux.push_back({z[n + 2], S.proj()});
    const auto pb = hecke_embedding(seq, aux);
    const auto v = stability(pb).verdict;
    cer.observe(v != Verdict::Stable, {{"marks", marks_json(pb.marks)}, {"verdict", to_string(v)}});
    ParabolicBundle small = pb;
    small.weight = 1e-4;
    cwi.observe(stability(small).verdict != v, {{"marks", marks_json(pb.marks)}});
  }
  auto& cee = R.check("elliptic hecke_embedding is Stable for n = 0, 2", "closed form", 0.0);
  for (int k = 0; k < 40; ++k) {
    const int n = 2 * (k % 2);
    const auto pts = far_curve_points(S, L, n + 1, 0.15);
    std::vector<ProjPoint> t;
    for (int i = 0; i <= n; ++i) t.push_back(S.proj());
    const json in{{"tuple", [&] {
                     json a = json::array();
                     for (const auto& x : t) a.push_back(to_json(x));
                     return a;
                   }()}};
    try {
      const auto s = construct_sequence(L, t, pts[0], {pts.begin() + 1, pts.end()});
      if (!membership_Hp(L, s)) continue;
      const auto pb = hecke_embedding(L, s);
      const auto v = stability(pb).verdict;
      cee.observe(v != Verdict::Stable, merged(in, {{"verdict", to_string(v)}}));
      ParabolicBundle small = pb;
      small.weight = 1e-4;
      cwi.observe(stability(small).verdict != v, in);
    } catch (const HeckeError& e) {
      cee.error(e.what(), in);
    }
  }

  // Reordering the marks does not change the terminal bundle.
  auto& cpr = R.check("all 6 permutations of 3 marks give the same terminal class (CP^1)", "closed form", 0.0);
  auto& cpe = R.check("all 6 permutations of 3 marks give the same terminal class (elliptic)", "oracle", 0.0);
  auto& crt = R.check("lines_from_sequence and sequence_from_lines are inverse", "identity", 0.0);
  for (int k = 0; k < 50; ++k) {
    const auto z = far_points(S, 3);
    const std::vector<ProjPoint> pal{S.proj(), ProjPoint::infinity()};
    std::vector<Mark> marks;
    for (int i = 0; i < 3; ++i) marks.push_back({z[i], palette(S, pal)});
    const RationalSequence seq = sequence_from_lines(O2, marks);
    const auto back = lines_from_sequence(seq);
    double rt = 0.0;
    for (int i = 0; i < 3; ++i)
      rt = std::max({rt, std::abs(back[i].point - marks[i].point), chordal(back[i].line, marks[i].line)});
    crt.observe(rt, {{"marks", marks_json(marks)}});
    const RationalBundle t0 = terminal_bundle(seq);
    std::vector<int> perm{0, 1, 2};
    do {
      std::vector<Mark> pm;
      for (int i : perm) pm.push_back(marks[i]);
      cpr.observe(!(terminal_bundle(sequence_from_lines(O2, pm)) == t0),
                  {{"marks", marks_json(pm)}, {"terminal", t0.str()}});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  for (int k = 0; k < 20; ++k) {
    const auto pts = far_curve_points(S, L, 3);
    cplx u;
    do u = S.lift();
    while (L.distance_to_lattice(2.0 * u) < 0.05);
    const EllipticBundle E = k % 2 ? EllipticBundle::f2() : EllipticBundle::decomposable({0, u}, {0, -u});
    const std::vector<ProjPoint> pal{ProjPoint::infinity(), ProjPoint::zero()};
    std::vector<ProjPoint> lines;
    for (int i = 0; i < 3; ++i) lines.push_back(palette(S, pal));
    const json in{{"bundle", E.str()}};
    try {
      const EllipticBundle t0 = build_chain(L, E, steps_from_lines(L, E, pts, lines)).bundles.back();
      std::vector<int> perm{0, 1, 2};
      do {
        std::vector<CurvePoint> pp;
        std::vector<ProjPoint> pl;
        for (int i : perm) pp.push_back(pts[i]), pl.push_back(lines[i]);
        const EllipticBundle t = build_chain(L, E, steps_from_lines(L, E, pp, pl)).bundles.back();
        cpe.observe(!isomorphic(L, t, t0, 1e-7), merged(in, {{"terminal", t0.str()}, {"permuted", t.str()}}));
      } while (std::next_permutation(perm.begin(), perm.end()));
    } catch (const HeckeError& e) {
      cpe.error(e.what(), in);
    }
  }
  return R;
}

}  // namespace hecke::suites
