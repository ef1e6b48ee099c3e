// SPDX-License-Identifier: MIT
#include "report.hpp"

#include <cmath>

namespace hecke::suites {

Sampler::Sampler(std::uint64_t seed, std::uint64_t stream, const Lattice& L) : L_(L) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  rng_.seed(seq);
}

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

cplx Sampler::gaussian() {
  std::normal_distribution<double> n;
  const double re = n(rng_);
  return {re, n(rng_)};
}

ProjPoint Sampler::proj() {
  // Stereographic pullback of a uniform sphere point.
  const double zc = uniform(-1.0, 1.0), ph = uniform(0.0, 2.0 * kPi);
  const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
  return ProjPoint(cplx(r * std::cos(ph), r * std::sin(ph)), cplx(1.0 - zc, 0.0));
}

cplx Sampler::lift(double lo, double hi) {
  const double x = uniform(lo, hi);
  return x + uniform(lo, hi) * L_.tau();
}

int Sampler::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const ProjPoint& p) { return json::array({to_json(p.a()), to_json(p.c())}); }

void Check::observe(double residual, const json& inputs) {
  ++samples;
  if (std::isnan(residual)) residual = INFINITY;
  if (samples == 1 || residual > worst) {
    worst = residual;
    worst_inputs = inputs;
  }
}

void Check::error(const std::string& what, const json& inputs) {
  ++errors;
  if (first_error.is_null()) first_error = json{{"error", what}, {"inputs", inputs}};
}

Report::Report(std::string suite, const RunConfig& cfg) : suite_(std::move(suite)), cfg_(cfg) {}

Check& Report::check(const std::string& name, const std::string& basis, double tol, bool asserted) {
  checks_.push_back(Check{name, basis, tol_or(tol), asserted});
  return checks_.back();
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.pass()) return false;
  return true;
}

json Report::to_json() const {
  json j;
  j["suite"] = suite_;
  j["config"] = {{"tau", hecke::suites::to_json(cfg_.tau)}, {"seed", cfg_.seed}};
  if (cfg_.samples) j["config"]["samples"] = *cfg_.samples;
  if (cfg_.tol) j["config"]["tol"] = *cfg_.tol;
  json arr = json::array();
  int passed = 0, asserted = 0;
  for (const auto& c : checks_) {
    json r;
    r["name"] = c.name;
    r["basis"] = c.basis;
    r["asserted"] = c.asserted;
    r["samples"] = c.samples;
    r["tolerance"] = c.tol;
    r["observed"] = std::isfinite(c.worst) ? json(c.worst) : json("inf");
    r["errors"] = c.errors;
    r["pass"] = c.pass();
    r["worst_inputs"] = c.worst_inputs;
    if (!c.first_error.is_null()) r["first_error"] = c.first_error;
    if (!c.extra.empty()) r["extra"] = c.extra;
    arr.push_back(r);
    if (c.asserted) {
      ++asserted;
      if (c.pass()) ++passed;
    }
  }
  j["checks"] = arr;
  if (!notes_.empty()) j["notes"] = notes_;
  j["summary"] = {{"asserted", asserted}, {"passed", passed}, {"failed", asserted - passed},
                  {"status", passed == asserted ? "PASS" : "FAIL"}};
  return j;
}

}  // namespace hecke::suites
