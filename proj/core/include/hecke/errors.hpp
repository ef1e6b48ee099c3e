// SPDX-License-Identifier: MIT
// Exception types raised by the hecke core library.
#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

struct HeckeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define HECKE_ERROR(Name)                        \
  struct Name : HeckeError {                     \
    explicit Name(const std::string& what)       \
        : HeckeError(#Name ": " + what) {}       \
  }

HECKE_ERROR(NonUnit);
HECKE_ERROR(NotInCell);
HECKE_ERROR(NearPole);
HECKE_ERROR(NoConvergence);
HECKE_ERROR(NotGlobal);
HECKE_ERROR(RowNotFound);
HECKE_ERROR(NotSemistable);
HECKE_ERROR(Unsupported);
HECKE_ERROR(UnderlyingUnstable);
HECKE_ERROR(TerminalNotMinimal);
HECKE_ERROR(ReductionFailure);
HECKE_ERROR(DegenerateSpectrum);
HECKE_ERROR(ConfigError);

#undef HECKE_ERROR

}  // namespace hecke
