// SPDX-License-Identifier: MIT
// Verification suites behind the hecke-lab commands and the acceptance gate.
#pragma once

#include <string>
#include <vector>

#include "report.hpp"

namespace hecke::suites {

Report verify_theta(const RunConfig& cfg);
Report verify_eta(const RunConfig& cfg);
Report verify_rational_tables(const RunConfig& cfg);
Report verify_elliptic_tables(const RunConfig& cfg);
Report verify_double_table(const RunConfig& cfg);
Report compute_space_s2(const RunConfig& cfg, int n);
Report compute_space_t2(const RunConfig& cfg, int n);
Report check_conjecture(const RunConfig& cfg, int m);
Report embed_check(const RunConfig& cfg);

// Dispatch by command name: "compute-space" takes {S2|T2, n}, "check-conjecture" takes {m}.
Report run(const std::string& command, const std::vector<std::string>& args, const RunConfig& cfg);

// Random-stream index of each suite.
enum Stream : std::uint64_t {
  kThetaStream = 1,
  kEtaStream = 2,
  kRationalStream = 3,
  kEllipticStream = 4,
  kDoubleStream = 5,
  kEmbedStream = 6,
  kSpaceS2Stream = 100,  // + n
  kSpaceT2Stream = 200,  // + n
  kConjectureStream = 300,  // + m
};

}  // namespace hecke::suites
