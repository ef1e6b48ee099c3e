// SPDX-License-Identifier: MIT
// Run configuration, seeded random streams and the structured report shared by all suites.
#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>

#include <json.hpp>

#include "hecke/hecke.hpp"

namespace hecke::suites {

using json = nlohmann::ordered_json;

struct RunConfig {
  cplx tau = kDefaultTau;
  std::uint64_t seed = 7;
  std::optional<int> samples;  // overrides every per-check sample count
  std::optional<double> tol;   // overrides every asserted tolerance
  std::string out;             // report path, stdout when empty
};

// Draws for one suite: stream = mt19937_64 seeded by (seed, suite index).
class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t stream, const Lattice& L);

  double uniform(double lo = 0.0, double hi = 1.0);
  cplx gaussian();
  // Uniform on the sphere, pulled back to [a:c].
  ProjPoint proj();
  // x + y tau, x, y uniform in [lo, hi).
  cplx lift(double lo = 0.0, double hi = 1.0);
  CurvePoint point() { return CurvePoint{lift()}; }
  int integer(int lo, int hi);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  Lattice L_;
};

json to_json(cplx z);
json to_json(const ProjPoint& p);
// a with the keys of b added.
inline json merged(json a, const json& b) {
  a.update(b);
  return a;
}

// Worst-case accumulator for one check.
struct Check {
  std::string name;
  std::string basis;  // "closed form", "oracle" or "identity"
  double tol = 0.0;
  bool asserted = true;
  int samples = 0;
  int errors = 0;
  double worst = 0.0;
  json worst_inputs = json::object();
  json first_error = json();
  json extra = json::object();

  void observe(double residual, const json& inputs);
  void error(const std::string& what, const json& inputs);
  // Count-type check: pass iff observe()d residuals are all <= tol.
  bool pass() const { return !asserted || (errors == 0 && samples > 0 && worst <= tol); }
};

class Report {
 public:
  Report(std::string suite, const RunConfig& cfg);

  Check& check(const std::string& name, const std::string& basis, double tol, bool asserted = true);
  json& notes() { return notes_; }
  bool passed() const;
  json to_json() const;
  std::string dump() const { return to_json().dump(2) + "\n"; }
  const std::deque<Check>& checks() const { return checks_; }
  double tol_or(double t) const { return cfg_.tol.value_or(t); }
  int samples_or(int n) const { return cfg_.samples.value_or(n); }

 private:
  std::string suite_;
  RunConfig cfg_;
  std::deque<Check> checks_;  // stable references
  json notes_ = json::object();
};

}  // namespace hecke::suites
