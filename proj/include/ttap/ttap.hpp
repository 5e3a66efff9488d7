#pragma once

// Umbrella header.
#include "ttap/error.hpp"
#include "ttap/geometry.hpp"
#include "ttap/tiling.hpp"
#include "ttap/enumerate.hpp"
#include "ttap/ap.hpp"
#include "ttap/boundary.hpp"
#include "ttap/width4.hpp"
#include "ttap/chain_graph.hpp"
#include "ttap/cdcl.hpp"
#include "ttap/cnf.hpp"
#include "ttap/search.hpp"
#include "ttap/vdw.hpp"
#include "ttap/io.hpp"
#include "ttap/render.hpp"
