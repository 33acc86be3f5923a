#pragma once

#include "fourmode/cli.hpp"
#include "fourmode/config.hpp"
#include "fourmode/contour.hpp"
#include "fourmode/correlations.hpp"
#include "fourmode/entanglement.hpp"
#include "fourmode/error.hpp"
#include "fourmode/evolution.hpp"
#include "fourmode/fock_oracle.hpp"
#include "fourmode/linalg.hpp"
#include "fourmode/model.hpp"
#include "fourmode/moments.hpp"
#include "fourmode/nonclassicality.hpp"
#include "fourmode/state.hpp"
#include "fourmode/sweep.hpp"
#include "fourmode/symplectic.hpp"
