#pragma once

// Umbrella header.

#include "floq/charpoly.hpp"
#include "floq/digraph.hpp"
#include "floq/errors.hpp"
#include "floq/floquet.hpp"
#include "floq/gaussint.hpp"
#include "floq/json_io.hpp"
#include "floq/matrix.hpp"
#include "floq/multipoly.hpp"
#include "floq/numeric.hpp"
#include "floq/search.hpp"
