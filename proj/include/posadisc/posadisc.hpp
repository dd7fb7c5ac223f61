#pragma once

#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"
#include "posadisc/graph_io.hpp"
#include "posadisc/cycle_power.hpp"
#include "posadisc/templates.hpp"
#include "posadisc/cliques.hpp"
#include "posadisc/claims.hpp"
#include "posadisc/constructions.hpp"
#include "posadisc/search.hpp"
#include "posadisc/pipeline/params.hpp"
#include "posadisc/pipeline/model.hpp"
#include "posadisc/pipeline/clique_sequence.hpp"
#include "posadisc/pipeline/path_vertices.hpp"
#include "posadisc/pipeline/fill.hpp"
#include "posadisc/pipeline/assemble.hpp"
