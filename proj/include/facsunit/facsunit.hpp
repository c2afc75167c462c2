#pragma once

#include "facsunit/arith.hpp"
#include "facsunit/bounds.hpp"
#include "facsunit/errors.hpp"
#include "facsunit/lifting.hpp"
#include "facsunit/recurrence.hpp"
#include "facsunit/search.hpp"
#include "facsunit/serialize.hpp"
#include "facsunit/valuation.hpp"
