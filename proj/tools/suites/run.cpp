// SPDX-License-Identifier: MIT
#include <charconv>

#include "suites.hpp"

namespace hecke::suites {

namespace {

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError(std::string("bad ") + what + ": " + s);
  return v;
}

}  // namespace

Report run(const std::string& command, const std::vector<std::string>& args, const RunConfig& cfg) {
  if (cfg.tau.imag() <= 0.0) throw ConfigError("Im tau must be positive");
  if (cfg.samples && *cfg.samples < 1) throw ConfigError("samples must be at least 1");
  auto nargs = [&](size_t n) {
    if (args.size() != n) throw ConfigError(command + " takes " + std::to_string(n) + " argument(s)");
  };
  if (command == "compute-space") {
    nargs(2);
    const int n = parse_int(args[1], "n");
    if (args[0] == "S2") return compute_space_s2(cfg, n);
    if (args[0] == "T2") return compute_space_t2(cfg, n);
    throw ConfigError("curve must be S2 or T2");
  }
  if (command == "check-conjecture") {
    nargs(1);
    return check_conjecture(cfg, parse_int(args[0], "m"));
  }
  nargs(0);
  if (command == "verify-theta") return verify_theta(cfg);
  if (command == "verify-eta") return verify_eta(cfg);
  if (command == "verify-rational-tables") return verify_rational_tables(cfg);
  if (command == "verify-elliptic-tables") return verify_elliptic_tables(cfg);
  if (command == "verify-double-table") return verify_double_table(cfg);
  if (command == "embed-check") return embed_check(cfg);
  throw ConfigError("unknown command " + command);
}

}  // namespace hecke::suites
