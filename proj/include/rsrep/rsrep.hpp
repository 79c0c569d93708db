#pragma once

#include "rsrep/bigint.hpp"
#include "rsrep/census.hpp"
#include "rsrep/core.hpp"
#include "rsrep/cylinders.hpp"
#include "rsrep/errors.hpp"
#include "rsrep/numerals.hpp"
#include "rsrep/projection.hpp"
#include "rsrep/rational.hpp"
