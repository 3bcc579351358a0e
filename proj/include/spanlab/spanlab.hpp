#ifndef SPANLAB_SPANLAB_HPP
#define SPANLAB_SPANLAB_HPP

#include "spanlab/audit.hpp"
#include "spanlab/common.hpp"
#include "spanlab/emulator.hpp"
#include "spanlab/generate.hpp"
#include "spanlab/girth.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/hierarchy.hpp"
#include "spanlab/hopset.hpp"
#include "spanlab/lowerbound.hpp"
#include "spanlab/pairwise.hpp"
#include "spanlab/reductions.hpp"
#include "spanlab/serialize.hpp"
#include "spanlab/shortest_paths.hpp"

#endif
