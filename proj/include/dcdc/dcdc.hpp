#pragma once

#include "dcdc/catalog.hpp"
#include "dcdc/classify.hpp"
#include "dcdc/connectivity.hpp"
#include "dcdc/embed.hpp"
#include "dcdc/embedding.hpp"
#include "dcdc/fork.hpp"
#include "dcdc/graph.hpp"
#include "dcdc/graph6.hpp"
#include "dcdc/hexagon.hpp"
#include "dcdc/isomorphism.hpp"
#include "dcdc/json_io.hpp"
#include "dcdc/matching.hpp"
#include "dcdc/maxflow.hpp"
#include "dcdc/mixed_graph.hpp"
#include "dcdc/pipeline.hpp"
#include "dcdc/pseudohex.hpp"
#include "dcdc/transform.hpp"
