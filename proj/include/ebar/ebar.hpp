#pragma once

// Umbrella header for the ebar library: multiparticle entanglement quantified
// by averaging a bipartite measure over every bipartite grouping of the
// particles.

#include "ebar/complex_matrix.hpp"
#include "ebar/state.hpp"
#include "ebar/state_io.hpp"
#include "ebar/regroup.hpp"
#include "ebar/measures.hpp"
#include "ebar/aggregate.hpp"
#include "ebar/families.hpp"
