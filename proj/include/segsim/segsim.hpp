#pragma once

// Umbrella header: payoffs, equilibria, best-response and logit dynamics,
// long-run stability, comparative statics, rendering and serialization for
// the two-group two-platform relocation game.

#include "segsim/dynamics.hpp"
#include "segsim/equilibria.hpp"
#include "segsim/io.hpp"
#include "segsim/params.hpp"
#include "segsim/payoffs.hpp"
#include "segsim/potential.hpp"
#include "segsim/render.hpp"
#include "segsim/rng.hpp"
#include "segsim/state.hpp"
#include "segsim/statics.hpp"
#include "segsim/stochastic.hpp"
#include "segsim/thresholds.hpp"
