#pragma once

// Umbrella header for the whole library.

#include "dfvs/digraph.hpp"
#include "dfvs/embedding.hpp"
#include "dfvs/error.hpp"
#include "dfvs/formula.hpp"
#include "dfvs/generators.hpp"
#include "dfvs/oracle.hpp"
#include "dfvs/patterns.hpp"
#include "dfvs/planar_dp.hpp"
#include "dfvs/rng.hpp"
#include "dfvs/sc_decomposition.hpp"
#include "dfvs/tree_decomposition.hpp"
#include "dfvs/treewidth_dp.hpp"
