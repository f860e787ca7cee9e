#pragma once

#include "vifw/config.hpp"
#include "vifw/csv.hpp"
#include "vifw/dynamics.hpp"
#include "vifw/experiment.hpp"
#include "vifw/feasible_set.hpp"
#include "vifw/operators.hpp"
#include "vifw/oracle.hpp"
#include "vifw/schedule.hpp"
#include "vifw/solver.hpp"
#include "vifw/trace.hpp"
#include "vifw/types.hpp"
