#pragma once

#include "evtow/benchmarks.hpp"
#include "evtow/charging_model.hpp"
#include "evtow/config_io.hpp"
#include "evtow/energy_model.hpp"
#include "evtow/errors.hpp"
#include "evtow/forecast.hpp"
#include "evtow/ga_solver.hpp"
#include "evtow/generator.hpp"
#include "evtow/instance.hpp"
#include "evtow/instance_io.hpp"
#include "evtow/oracle.hpp"
#include "evtow/parallel.hpp"
#include "evtow/rng.hpp"
#include "evtow/route_eval.hpp"
#include "evtow/strategy_sweep.hpp"
#include "evtow/temporal_windows.hpp"
