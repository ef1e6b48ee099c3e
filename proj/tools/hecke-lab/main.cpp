// SPDX-License-Identifier: MIT
// hecke-lab: run a verification suite and write its report.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "suites.hpp"

namespace {

hecke::cplx parse_tau(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw hecke::ConfigError("--tau expects RE,IM");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw hecke::ConfigError("--tau expects RE,IM, got " + s);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke modifications of rank-2 bundles: verification suites and computed spaces"};
  app.require_subcommand(1);

  std::string tau = "0.21,1.3";
  std::uint64_t seed = 7;
  int samples = 0;
  double tol = 0.0;
  std::string out;
  app.add_option("--tau", tau, "lattice parameter RE,IM")->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--samples", samples, "override every per-check sample count")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "override every asserted tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out, "report path (stdout when omitted)");
  app.fallthrough();

  std::string command;
  std::vector<std::string> args;
  for (const char* name : {"verify-theta", "verify-eta", "verify-rational-tables", "verify-elliptic-tables",
                           "verify-double-table", "embed-check"}) {
    app.add_subcommand(name)->callback([&command, name] { command = name; });
  }
  auto* space = app.add_subcommand("compute-space", "membership and coordinates of H(S2,n) or H_p(T2,n)");
  std::string curve;
  int n = 0;
  space->add_option("curve", curve, "S2 or T2")->required()->check(CLI::IsMember({"S2", "T2"}));
  space->add_option("n", n, "number of Hecke points")->required();
  space->callback([&] {
    command = "compute-space";
    args = {curve, std::to_string(n)};
  });
  auto* conj = app.add_subcommand("check-conjecture", "Woodward-Hecke diagram for 2m points");
  int m = 1;
  conj->add_option("m", m, "half the number of points")->required();
  conj->callback([&] {
    command = "check-conjecture";
    args = {std::to_string(m)};
  });

  CLI11_PARSE(app, argc, argv);

  try {
    hecke::suites::RunConfig cfg;
    cfg.tau = parse_tau(tau);
    cfg.seed = seed;
    if (app.count("--samples")) cfg.samples = samples;
    if (app.count("--tol")) cfg.tol = tol;
    cfg.out = out;
    const auto report = hecke::suites::run(command, args, cfg);
    const std::string text = report.dump();
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) throw hecke::ConfigError("cannot write " + out);
      f << text;
    }
    std::cerr << command << ": " << (report.passed() ? "PASS" : "FAIL") << "\n";
    return report.passed() ? 0 : 1;
  } catch (const hecke::HeckeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
