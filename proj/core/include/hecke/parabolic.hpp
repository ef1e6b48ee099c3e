// SPDX-License-Identifier: MIT
// Rank-2 parabolic bundles with small weights: good/bad lines, stability,
// and the Hecke embeddings into the semistable moduli space.
#pragma once

#include <variant>
#include <vector>

#include "hecke/elliptic_hecke.hpp"
#include "hecke/rational_hecke.hpp"

namespace hecke {

inline constexpr double kDefaultWeight = 1e-3;

enum class Verdict { Stable, StrictlySemistable, Unstable };
const char* to_string(Verdict v);

struct Mark {
  cplx point;
  ProjPoint line;
};

struct ParabolicBundle {
  std::variant<RationalBundle, EllipticBundle> underlying;
  std::vector<Mark> marks;
  double weight = kDefaultWeight;
  Lattice lattice{kDefaultTau};  // used for elliptic underlying bundles only
};

struct StabilityVerdict {
  Verdict verdict;
  int witness;  // max number of lines bad in the same direction
};

// Parabolic degree of a line subbundle of degree d; sigma_i = +1 when the
// line at the i-th mark lies in the subbundle, -1 otherwise.
double pdeg_line(int degree, const std::vector<int>& sigma, double weight);
// Rank-2 parabolic degree: the weights cancel, leaving deg E.
double pdeg(const ParabolicBundle& pb);
double pslope(const ParabolicBundle& pb);

struct LineClassification {
  std::vector<bool> bad;
  std::vector<int> group;  // same-direction group of each bad line, -1 if good
  int max_same = 0;
};
LineClassification classify_lines(const ParabolicBundle& pb);

StabilityVerdict stability(const ParabolicBundle& pb);

// The correspondence between sequence data in the base trivialization and
// parabolic lines is the identity on coordinates.
std::vector<Mark> lines_from_sequence(const RationalSequence& seq);
RationalSequence sequence_from_lines(const RationalBundle& base, const std::vector<Mark>& marks);

ParabolicBundle hecke_embedding(const RationalSequence& seq, const std::vector<Mark>& aux,
                                double weight = kDefaultWeight);
ParabolicBundle hecke_embedding(const Lattice& L, const MarkedSequence& s, double weight = kDefaultWeight);

}  // namespace hecke
