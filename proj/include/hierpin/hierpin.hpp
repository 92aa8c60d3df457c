#pragma once

// Umbrella header for the hierarchical pinning toolkit.

#include "hierpin/annealed.hpp"
#include "hierpin/certificates.hpp"
#include "hierpin/common.hpp"
#include "hierpin/disorder.hpp"
#include "hierpin/estimators.hpp"
#include "hierpin/fit.hpp"
#include "hierpin/fractional.hpp"
#include "hierpin/lattice.hpp"
#include "hierpin/optimize.hpp"
#include "hierpin/params.hpp"
#include "hierpin/pool.hpp"
#include "hierpin/rng.hpp"
#include "hierpin/shift.hpp"
#include "hierpin/sweep.hpp"
#include "hierpin/tree.hpp"
#include "hierpin/version.hpp"
