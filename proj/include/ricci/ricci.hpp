// Convenience include pulling in the whole library.
#pragma once

#include "ricci/alignment.hpp"
#include "ricci/comparison.hpp"
#include "ricci/curvature.hpp"
#include "ricci/error.hpp"
#include "ricci/flow.hpp"
#include "ricci/format.hpp"
#include "ricci/generate.hpp"
#include "ricci/graph.hpp"
#include "ricci/io.hpp"
#include "ricci/parallel.hpp"
#include "ricci/pipeline.hpp"
#include "ricci/rng.hpp"
#include "ricci/stats.hpp"
