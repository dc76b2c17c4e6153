#pragma once

#include "flowforge/asymptotics.hpp"
#include "flowforge/experiments.hpp"
#include "flowforge/fit.hpp"
#include "flowforge/flow_problem.hpp"
#include "flowforge/graph.hpp"
#include "flowforge/hld.hpp"
#include "flowforge/io.hpp"
#include "flowforge/ipm.hpp"
#include "flowforge/link_cut.hpp"
#include "flowforge/link_cut_fuzz.hpp"
#include "flowforge/lsst.hpp"
#include "flowforge/mcmf.hpp"
#include "flowforge/naive_forest.hpp"
#include "flowforge/random.hpp"
#include "flowforge/rebuilding_game.hpp"
#include "flowforge/shortest_path.hpp"
#include "flowforge/stretch.hpp"
