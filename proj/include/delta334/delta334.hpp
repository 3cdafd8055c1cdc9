#pragma once
// Everything in one include.

#include "algebra.hpp"
#include "budget.hpp"
#include "clique.hpp"
#include "coloring.hpp"
#include "cycles.hpp"
#include "graph.hpp"
#include "graph_io.hpp"
#include "group_enum.hpp"
#include "invariants.hpp"
#include "parallel.hpp"
#include "sl3z_gen.hpp"
