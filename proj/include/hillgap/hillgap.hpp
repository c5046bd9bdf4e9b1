#pragma once

// Umbrella header.

#include "hillgap/blockdecomp.hpp"
#include "hillgap/core.hpp"
#include "hillgap/delta_model.hpp"
#include "hillgap/floquet.hpp"
#include "hillgap/parallel.hpp"
#include "hillgap/seqspace.hpp"
#include "hillgap/weights.hpp"
