#pragma once

#include "stablematch/errors.hpp"
#include "stablematch/instance.hpp"
#include "stablematch/stability.hpp"
#include "stablematch/lattice.hpp"
#include "stablematch/rotations.hpp"
#include "stablematch/poset.hpp"
#include "stablematch/rational.hpp"
#include "stablematch/maxflow.hpp"
#include "stablematch/closure.hpp"
#include "stablematch/weights.hpp"
#include "stablematch/polytope.hpp"
#include "stablematch/oracle.hpp"
