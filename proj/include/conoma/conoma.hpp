#pragma once

#include "conoma/assignment.hpp"
#include "conoma/channel.hpp"
#include "conoma/common.hpp"
#include "conoma/config.hpp"
#include "conoma/link_selection.hpp"
#include "conoma/metrics.hpp"
#include "conoma/objective.hpp"
#include "conoma/pairing.hpp"
#include "conoma/power.hpp"
#include "conoma/rates.hpp"
#include "conoma/rng.hpp"
#include "conoma/solvers.hpp"
#include "conoma/sweep.hpp"
#include "conoma/system.hpp"
