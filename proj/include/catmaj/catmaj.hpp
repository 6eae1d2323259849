// Umbrella header: the whole library in dependency order.
#pragma once

#include "catmaj/error.hpp"
#include "catmaj/rational.hpp"
#include "catmaj/numeric.hpp"
#include "catmaj/vec.hpp"
#include "catmaj/majorize.hpp"
#include "catmaj/renyi.hpp"
#include "catmaj/decide.hpp"
#include "catmaj/catalyst.hpp"
