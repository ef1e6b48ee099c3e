// SPDX-License-Identifier: MIT
#include "hecke/parabolic.hpp"

#include <algorithm>

#include "hecke/errors.hpp"

namespace hecke {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::StrictlySemistable: return "strictly-semistable";
    case Verdict::Unstable: return "unstable";
  }
  return "?";
}

double pdeg_line(int degree, const std::vector<int>& sigma, double weight) {
  double s = degree;
  for (int x : sigma) s += weight * x;
  return s;
}

namespace {

int underlying_degree(const ParabolicBundle& pb) {
  if (auto r = std::get_if<RationalBundle>(&pb.underlying)) return r->degree();
  return std::get<EllipticBundle>(pb.underlying).degree();
}

bool underlying_semistable(const ParabolicBundle& pb) {
  if (auto r = std::get_if<RationalBundle>(&pb.underlying)) return r->semistable();
  return std::get<EllipticBundle>(pb.underlying).semistable();
}

}  // namespace

double pdeg(const ParabolicBundle& pb) { return underlying_degree(pb); }
double pslope(const ParabolicBundle& pb) { return pdeg(pb) / 2.0; }

LineClassification classify_lines(const ParabolicBundle& pb) {
  if (!underlying_semistable(pb)) throw UnderlyingUnstable("classify_lines needs a semistable bundle");
  const size_t n = pb.marks.size();
  std::vector<bool> bad(n, false);
  std::vector<ProjPoint> keys(n);
  if (std::holds_alternative<RationalBundle>(pb.underlying)) {
    // O(k) + O(k): every line lies on a trivial subbundle, constant in the global frame.
    for (size_t i = 0; i < n; ++i) bad[i] = true, keys[i] = pb.marks[i].line;
  } else {
    const auto& E = std::get<EllipticBundle>(pb.underlying);
    for (size_t i = 0; i < n; ++i) {
      const auto st = line_status(pb.lattice, E, pb.lattice.point(pb.marks[i].point), pb.marks[i].line);
      bad[i] = st.bad;
      keys[i] = st.key;
    }
  }
  LineClassification out{bad, std::vector<int>(n, -1), 0};
  std::vector<ProjPoint> reps;
  std::vector<int> counts;
  for (size_t i = 0; i < n; ++i) {
    if (!bad[i]) continue;
    size_t g = 0;
    while (g < reps.size() && !same_point(reps[g], keys[i])) ++g;
    if (g == reps.size()) reps.push_back(keys[i]), counts.push_back(0);
    out.group[i] = static_cast<int>(g);
    out.max_same = std::max(out.max_same, ++counts[g]);
  }
  return out;
}

StabilityVerdict stability(const ParabolicBundle& pb) {
  const int n = static_cast<int>(pb.marks.size());
  if (n > 0 && !(pb.weight > 0.0 && pb.weight < 1.0 / (2.0 * n)))
    throw ConfigError("weight must lie in (0, 1/(2n))");
  if (!underlying_semistable(pb)) return {Verdict::Unstable, 0};
  if (auto e = std::get_if<EllipticBundle>(&pb.underlying); e && e->kind == BundleKind::G2Twist)
    return {Verdict::Stable, 0};

  // A maximal-degree subbundle through m of the lines has parabolic slope
  // deg E / 2 + weight (2m - n); every other subbundle loses at least 1 - n weight.
  const auto cls = classify_lines(pb);
  const int m = cls.max_same;
  std::vector<int> sigma(n, -1);
  for (int i = 0; i < m; ++i) sigma[i] = 1;
  const double half = pslope(pb);
  const double sub = pdeg_line(0, sigma, pb.weight) + half;
  const double eps = 0.25 * pb.weight;
  if (sub < half - eps) return {Verdict::Stable, m};
  if (sub > half + eps) return {Verdict::Unstable, m};
  return {Verdict::StrictlySemistable, m};
}

std::vector<Mark> lines_from_sequence(const RationalSequence& seq) {
  std::vector<Mark> marks;
  for (const auto& st : seq.steps) marks.push_back({st.point, st.direction});
  return marks;
}

RationalSequence sequence_from_lines(const RationalBundle& base, const std::vector<Mark>& marks) {
  RationalSequence seq{base, {}};
  for (const auto& mk : marks) seq.steps.push_back({mk.point, mk.line});
  return seq;
}

ParabolicBundle hecke_embedding(const RationalSequence& seq, const std::vector<Mark>& aux, double weight) {
  if (aux.size() != 3) throw ConfigError("rational embedding needs three auxiliary marks");
  if (!terminal_bundle(seq).semistable()) throw TerminalNotMinimal("terminal bundle is unstable");
  ParabolicBundle pb{seq.base, lines_from_sequence(seq), weight, Lattice(kDefaultTau)};
  pb.marks.insert(pb.marks.end(), aux.begin(), aux.end());
  return pb;
}

ParabolicBundle hecke_embedding(const Lattice& L, const MarkedSequence& s, double weight) {
  if (s.steps.size() % 2 != 0) throw ConfigError("elliptic embedding needs an even number of steps");
  if (!is_good_line(L, s.base, s.q, s.ell_q)) throw ConfigError("auxiliary line must be good");
  const EllipticChain ch = build_chain(L, s.base, s.steps);
  if (ch.bundles.back().hecke_length() != 0) throw TerminalNotMinimal("terminal bundle is unstable");
  ParabolicBundle pb{s.base, {{s.q.lift, s.ell_q}}, weight, L};
  for (size_t i = 0; i < s.steps.size(); ++i) pb.marks.push_back({s.steps[i].point.lift, ch.global_dirs[i]});
  return pb;
}

}  // namespace hecke
