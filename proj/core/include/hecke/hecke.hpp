// SPDX-License-Identifier: MIT
// Umbrella header for the hecke core library.
#pragma once

#include "hecke/errors.hpp"
#include "hecke/pseries.hpp"
#include "hecke/grassmannian.hpp"
#include "hecke/elliptic_kernel.hpp"
#include "hecke/rational_hecke.hpp"
#include "hecke/elliptic_hecke.hpp"
#include "hecke/parabolic.hpp"
#include "hecke/seidel_smith.hpp"
