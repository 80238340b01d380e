#ifndef FTX_FTX_HPP
#define FTX_FTX_HPP

#include "ftx/algorithms.hpp"
#include "ftx/config.hpp"
#include "ftx/crossover.hpp"
#include "ftx/error_budget.hpp"
#include "ftx/gate_costs.hpp"
#include "ftx/lattice.hpp"
#include "ftx/report.hpp"
#include "ftx/sim/floor_plan.hpp"
#include "ftx/sim/program.hpp"
#include "ftx/sim/simulator.hpp"
#include "ftx/surface_code.hpp"

#endif  // FTX_FTX_HPP
