#pragma once

#include "caputolab/abm.hpp"
#include "caputolab/basin.hpp"
#include "caputolab/bifurcation.hpp"
#include "caputolab/classify.hpp"
#include "caputolab/convergence.hpp"
#include "caputolab/divergence.hpp"
#include "caputolab/gamma.hpp"
#include "caputolab/hdelay.hpp"
#include "caputolab/hidden.hpp"
#include "caputolab/hnn.hpp"
#include "caputolab/io.hpp"
#include "caputolab/ivp.hpp"
#include "caputolab/maxima.hpp"
#include "caputolab/parallel.hpp"
#include "caputolab/stability.hpp"
#include "caputolab/weights.hpp"
