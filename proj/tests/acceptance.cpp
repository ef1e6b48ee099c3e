// SPDX-License-Identifier: MIT
// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned, default seed.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "suites.hpp"

using namespace hecke;
using namespace hecke::suites;

namespace {

struct Timed {
  Report report;
  double seconds;
};

const RunConfig kConfig{};  // tau = 0.21 + 1.3i, seed 7, no overrides

std::map<std::string, Timed> g_runs;

std::string key(const std::string& cmd, const std::vector<std::string>& args) {
  std::string k = cmd;
  for (const auto& a : args) k += " " + a;
  return k;
}

const Timed& get(const std::string& cmd, const std::vector<std::string>& args = {}) {
  const std::string k = key(cmd, args);
  if (auto it = g_runs.find(k); it != g_runs.end()) return it->second;
  const auto t0 = std::chrono::steady_clock::now();
  Report r = run(cmd, args, kConfig);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return g_runs.emplace(k, Timed{std::move(r), s}).first->second;
}

// Accumulates the verdict and a short reason for one criterion.
struct Gate {
  bool ok = true;
  std::string why;
  void fail(const std::string& s) {
    if (ok) why = s;
    ok = false;
  }
  // Every check whose name starts with `prefix` must pass with at least
  // `samples` draws and an asserted tolerance no looser than `tol`.
  int require(const Report& r, const std::string& prefix, int samples, double tol) {
    int n = 0;
    for (const auto& c : r.checks()) {
      if (c.name.rfind(prefix, 0) != 0) continue;
      ++n;
      if (!c.asserted) fail(c.name + ": not asserted");
      else if (!c.pass()) fail(c.name + ": failed (worst " + std::to_string(c.worst) + ")");
      else if (c.samples < samples) fail(c.name + ": " + std::to_string(c.samples) + " samples");
      else if (c.tol > tol) fail(c.name + ": tolerance " + std::to_string(c.tol));
    }
    if (n == 0) fail("no check named '" + prefix + "'");
    return n;
  }
  void all_pass(const Report& r) {
    if (!r.passed()) fail(r.to_json()["suite"].get<std::string>() + " has failing checks");
  }
  void within(double seconds, double limit) {
    if (seconds >= limit) fail("runtime " + std::to_string(seconds) + " s");
  }
};

int g_failed = 0;

void criterion(int id, const std::string& what, const std::function<void(Gate&)>& body) {
  Gate g;
  try {
    body(g);
  } catch (const std::exception& e) {
    g.fail(std::string("exception: ") + e.what());
  }
  if (!g.ok) ++g_failed;
  std::printf("criterion %d: %s  %s%s%s\n", id, g.ok ? "PASS" : "FAIL", what.c_str(), g.ok ? "" : "  -- ",
              g.why.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "theta kernel quasi-periodicity and h evenness < 1e-9 (100 samples), < 5 s", [](Gate& g) {
    const auto& t = get("verify-theta");
    g.all_pass(t.report);
    for (const char* p : {"theta_w(z+1)", "theta_w(z+tau)", "theta~_w(z+1)", "theta~_w(z+2tau)", "g_w(z+1)",
                          "g_w(z+tau)", "g~_w(z+2tau)", "h(-z) = h(z)"})
      g.require(t.report, p, 100, 1e-9);
    g.within(t.seconds, 5.0);
  });

  criterion(2, "eta invariance 500 trials < 1e-9; closed-form pairs 100 draws < 1e-10, < 5 s", [](Gate& g) {
    const auto& t = get("verify-eta");
    g.all_pass(t.report);
    g.require(t.report, "eta(AZ) = eta(AZB)", 500, 1e-9);
    g.require(t.report, "alpha-form pair", 100, 1e-10);
    g.require(t.report, "beta-form pair", 100, 1e-10);
    g.within(t.seconds, 5.0);
  });

  criterion(3, "rational tables: det divisor exact, eta 1e-10, globality, +-1 on 64-direction grid", [](Gate& g) {
    const auto& t = get("verify-rational-tables");
    g.all_pass(t.report);
    for (const char* row : {"unstable [1:0]", "unstable [l:1]", "semistable [1:0]", "semistable [l:1]"}) {
      const std::string r = row;
      g.require(t.report, r + ": det", 1, 0.0);
      g.require(t.report, r + ": eta_at(alpha, mu) = direction", 1, 1e-10);
      g.require(t.report, r + ": chart_convert is polynomial in w", 1, 0.0);
    }
    g.require(t.report, "hecke length changes by +-1 on a 64-direction grid", 64, 0.0);
  });

  criterion(4, "H(S2,n) membership equals the closed-form complement for n = 2, 3 (grid + 200 random)", [](Gate& g) {
    const auto& a = get("compute-space", {"S2", "2"});
    const auto& b = get("compute-space", {"S2", "3"});
    g.require(a.report, "membership predicate equals the closed-form complement", 400 + 200, 0.0);
    g.require(b.report, "membership predicate equals the closed-form complement", 8000 + 200, 0.0);
  });

  criterion(5, "kamnitzer m = 1 closed forms < 1e-10 (100 draws), chi = {mu1, mu2} < 1e-9", [](Gate& g) {
    const auto& t = get("check-conjecture", {"1"});
    g.require(t.report, "kamnitzer alpha form", 100, 1e-10);
    g.require(t.report, "kamnitzer beta form", 100, 1e-10);
    g.require(t.report, "chi(kamnitzer) = {mu1, mu2}", 100, 1e-9);
  });

  criterion(6, "woodward-hecke diagram < 1e-8 for m = 1, 2 (200 draws); m = 3 sweep reports, < 60 s", [](Gate& g) {
    const auto& a = get("check-conjecture", {"1"});
    const auto& b = get("check-conjecture", {"2"});
    const auto& c = get("check-conjecture", {"3"});
    g.require(a.report, "woodward-hecke diagram residual", 200, 1e-8);
    g.require(b.report, "woodward-hecke diagram residual", 200, 1e-8);
    bool reported = false;
    for (const auto& ch : c.report.checks())
      if (ch.name.rfind("woodward-hecke diagram residual (sweep)", 0) == 0 && ch.samples >= 50 && ch.errors == 0)
        reported = true;
    if (!reported) g.fail("m = 3 sweep did not complete");
    g.within(a.seconds + b.seconds + c.seconds, 60.0);
  });

  criterion(7, "elliptic rows: equivariance < 1e-8, det zero within 1e-6, 20 draws per row, < 120 s", [](Gate& g) {
    const auto& t = get("verify-elliptic-tables");
    int rows = 0;
    for (const auto& c : t.report.checks()) {
      const auto pos = c.name.find(": equivariance residual");
      if (pos == std::string::npos) continue;
      const std::string row = c.name.substr(0, pos);
      g.require(t.report, row + ": equivariance residual", 20, 1e-8);
      g.require(t.report, row + ": only det zero at the Hecke point", 20, 1e-6);
      ++rows;
    }
    if (rows < 15) g.fail("only " + std::to_string(rows) + " rows");
    g.within(t.seconds, 120.0);
  });

  criterion(8, "single-Hecke rows: eta_at = direction (1e-8), hecke length +-1", [](Gate& g) {
    const auto& t = get("verify-elliptic-tables");
    g.all_pass(t.report);
    for (const auto& c : t.report.checks()) {
      const auto pos = c.name.find(": eta_at = direction");
      if (pos == std::string::npos) continue;
      const std::string row = c.name.substr(0, pos);
      g.require(t.report, row + ": eta_at = direction", 20, 1e-8);
      g.require(t.report, row + ": hecke length changes by +-1", 20, 0.0);
    }
  });

  criterion(9, "double-Hecke: table vs chained S-class on 200 samples, every block incl. 2-torsion", [](Gate& g) {
    const auto& t = get("verify-double-table");
    g.all_pass(t.report);
    g.require(t.report, "table and chained routes agree on the S-class", 200, 0.0);
    const json cov = t.report.to_json()["notes"]["coverage"];
    for (const char* block : {"O+O |", "F2 |", "generic p |", "2p = 2p1 |", "2p = 2p2 |", "2p = 2p1 = 2p2 |"}) {
      int n = 0;
      for (const auto& [k, v] : cov.items())
        if (k.find(block) != std::string::npos) n += v.get<int>();
      if (n == 0) g.fail(std::string("block '") + block + "' not sampled");
    }
  });

  criterion(10, "H_p(T2,n): n = 0 grid, n = 1 roundtrip < 1e-7 (100), n = 2 injectivity and membership", [](Gate& g) {
    const auto& a = get("compute-space", {"T2", "0"});
    const auto& b = get("compute-space", {"T2", "1"});
    const auto& c = get("compute-space", {"T2", "2"});
    g.require(a.report, "h_0 reaches every point of the sample grid", 1, 1e-7);
    g.require(b.report, "construct_sequence then h_total returns the tuple", 100, 1e-7);
    g.require(c.report, "f is injective on 1000 sampled pairs", 1000, 0.0);
    g.require(c.report, "f(p) tuples are not members", 1, 0.0);
    g.require(c.report, "random tuples farther than 0.1 from f(X) are members", 100, 0.0);
    g.all_pass(a.report);
    g.all_pass(b.report);
    g.all_pass(c.report);
  });

  criterion(11, "parabolic: good/bad verdicts, unstable-mark direction (200 per curve), stable embeddings", [](Gate& g) {
    const auto& t = get("embed-check");
    g.all_pass(t.report);
    g.require(t.report, "O+O verdicts", 1, 0.0);
    g.require(t.report, "unstable marks give an unstable terminal bundle (O+O over CP^1", 200, 0.0);
    g.require(t.report, "unstable marks give an unstable terminal bundle (elliptic", 200, 0.0);
    g.require(t.report, "rational hecke_embedding is Stable", 1, 0.0);
    g.require(t.report, "elliptic hecke_embedding is Stable", 1, 0.0);
  });

  criterion(12, "determinism: every suite rerun with seed 7 is byte-identical", [](Gate& g) {
    for (const auto& [k, t] : g_runs) {
      const auto sp = k.find(' ');
      std::vector<std::string> args;
      std::string rest = sp == std::string::npos ? "" : k.substr(sp + 1);
      while (!rest.empty()) {
        const auto s = rest.find(' ');
        args.push_back(rest.substr(0, s));
        rest = s == std::string::npos ? "" : rest.substr(s + 1);
      }
      if (run(k.substr(0, sp), args, kConfig).dump() != t.report.dump()) g.fail(k + " differs on rerun");
    }
  });

  std::printf("acceptance: %d of 12 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
