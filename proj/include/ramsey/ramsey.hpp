#pragma once

#include "ramsey/core.hpp"
#include "ramsey/reductions.hpp"
#include "ramsey/treemeasure.hpp"
#include "ramsey/random.hpp"
#include "ramsey/search.hpp"
#include "ramsey/bounds.hpp"
#include "ramsey/io.hpp"
#include "ramsey/audit.hpp"
