#pragma once

#include "skirent/game.hpp"
#include "skirent/numerics.hpp"
#include "skirent/report.hpp"
#include "skirent/rng.hpp"
#include "skirent/simulator.hpp"
#include "skirent/solver.hpp"
#include "skirent/strategies.hpp"
