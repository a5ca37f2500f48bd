#pragma once

#include "baselines.hpp"
#include "evaluator.hpp"
#include "fixtures.hpp"
#include "heuristic.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "scenario_io.hpp"
#include "sweep.hpp"
