#pragma once

#include "rml/constructions.hpp"
#include "rml/core/hypergraph.hpp"
#include "rml/core/io.hpp"
#include "rml/error.hpp"
#include "rml/fractional.hpp"
#include "rml/graph.hpp"
#include "rml/lab/random_instances.hpp"
#include "rml/lab/sweep.hpp"
#include "rml/lab/witness.hpp"
#include "rml/lp/simplex.hpp"
#include "rml/pipeline.hpp"
#include "rml/random.hpp"
#include "rml/rational.hpp"
#include "rml/solvers.hpp"
#include "rml/structure.hpp"
